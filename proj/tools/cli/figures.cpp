#include <ostream>

#include "chanwit/closedform.hpp"
#include "cli/cli.hpp"
#include "cli/csv.hpp"

namespace chanwit::cli {
namespace {

constexpr int kSteps = 100;  // g0 = 0.5 + 0.005 i

double g0_at(int i) { return 0.5 + 0.005 * i; }

void ampdamp_figure(std::ostream& csv) {
  constexpr double eta = 0.5;
  const auto ch = channels::amplitude_damping(eta);
  mat::CVector plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  const auto rho_plus = channels::DensityMatrix::pure(plus / std::sqrt(2.0));
  const auto rho_minus = channels::DensityMatrix::pure(minus / std::sqrt(2.0));
  const auto rho0 = channels::DensityMatrix::pure(mat::basis_vector(2, 0));
  const auto rho1 = channels::DensityMatrix::pure(mat::basis_vector(2, 1));

  csv << "g0,U_opt,U_plus_encoding,U_basis_encoding,U_trivial\n";
  for (int i = 0; i <= kSteps; ++i) {
    const double g0 = g0_at(i);
    csv << fmt9(g0) << ',' << fmt9(closedform::utility_ampdamp_binary(eta, g0).value) << ','
        << fmt9(closedform::helstrom(ch, rho_plus, rho_minus, g0).value) << ','
        << fmt9(closedform::helstrom(ch, rho0, rho1, g0).value) << ',' << fmt9(g0) << '\n';
  }
}

void cloning_figure(std::ostream& csv) {
  csv << "g0,U_N_d2,U_D_d2,U_N_d3,U_D_d3,U_N_d4,U_D_d4,U_trivial\n";
  for (int i = 0; i <= kSteps; ++i) {
    const double g0 = g0_at(i);
    csv << fmt9(g0);
    for (std::size_t d = 2; d <= 4; ++d)
      csv << ',' << fmt9(closedform::utility_cloning_binary(d, g0).value) << ','
          << fmt9(closedform::utility_partialtrace_cloning_binary(d, g0).value);
    csv << ',' << fmt9(g0) << '\n';
  }
}

}  // namespace

int cmd_figure(const std::string& id, std::ostream& csv, std::ostream& err) {
  if (id == "ampdamp") {
    ampdamp_figure(csv);
  } else if (id == "cloning") {
    cloning_figure(csv);
  } else {
    err << "error: unknown figure \"" << id << "\" (known: ampdamp, cloning)\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace chanwit::cli
