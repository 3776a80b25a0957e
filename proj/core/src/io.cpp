#include "chanwit/io.hpp"

#include <fstream>
#include <sstream>

namespace chanwit::io {
namespace {

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(context + ": missing field \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& context) {
  if (!j.is_number()) throw ParseError(context + ": expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& context) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ParseError(context + ": expected a positive integer");
  return j.get<std::size_t>();
}

Eigen::MatrixXd parse_rmatrix(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError(context + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError(context + ": rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = number(row[static_cast<std::size_t>(c)], context);
  }
  return m;
}

std::vector<double> parse_vector(const json& j, const std::string& context) {
  if (!j.is_array()) throw ParseError(context + ": expected an array");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number(e, context));
  return v;
}

channels::Channel parse_named(const std::string& kind, const json& p) {
  using namespace channels;
  const std::string ctx = "channel \"" + kind + "\"";
  if (kind == "identity") return identity(count(require(p, "d", ctx), ctx + ".d"));
  if (kind == "unitary") return unitary(parse_cmatrix(require(p, "U", ctx)));
  if (kind == "dephasing") {
    const double lambda = number(require(p, "lambda", ctx), ctx + ".lambda");
    if (p.contains("basis")) return dephasing(lambda, parse_cmatrix(p.at("basis")));
    return dephasing(lambda, count(require(p, "d", ctx), ctx + ".d"));
  }
  if (kind == "trace_class")
    return trace_class(DensityMatrix(parse_cmatrix(require(p, "sigma", ctx))),
                       count(require(p, "din", ctx), ctx + ".din"));
  if (kind == "erasure")
    return erasure(number(require(p, "lambda", ctx), ctx + ".lambda"),
                   count(require(p, "d", ctx), ctx + ".d"));
  if (kind == "qc") {
    const auto& povm = require(p, "povm", ctx);
    if (povm.is_string()) {
      if (povm.get<std::string>() != "trine") throw ParseError(ctx + ": unknown named POVM");
      return quantum_classical(Povm::trine());
    }
    if (!povm.is_array()) throw ParseError(ctx + ": povm must be an array of matrices");
    std::vector<mat::CMatrix> elements;
    for (const auto& e : povm) elements.push_back(parse_cmatrix(e));
    return quantum_classical(Povm(std::move(elements)));
  }
  if (kind == "depolarizing")
    return depolarizing(number(require(p, "lambda", ctx), ctx + ".lambda"),
                        count(require(p, "d", ctx), ctx + ".d"));
  if (kind == "pauli") {
    const auto v = parse_vector(require(p, "lambda", ctx), ctx + ".lambda");
    if (v.size() != 4) throw ParseError(ctx + ": lambda must have four weights");
    return pauli({v[0], v[1], v[2], v[3]});
  }
  if (kind == "amplitude_damping" || kind == "ampdamp")
    return amplitude_damping(number(require(p, "eta", ctx), ctx + ".eta"));
  if (kind == "shifted_depolarizing")
    return shifted_depolarizing(number(require(p, "lambda", ctx), ctx + ".lambda"),
                                DensityMatrix(parse_cmatrix(require(p, "sigma", ctx))));
  if (kind == "cloning" || kind == "cloning_1to2")
    return cloning_1to2(count(require(p, "d", ctx), ctx + ".d"));
  if (kind == "reduced_cloning") return reduced_cloning(count(require(p, "d", ctx), ctx + ".d"));
  throw ParseError("unknown channel kind \"" + kind + "\"");
}

}  // namespace

mat::CMatrix parse_cmatrix(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  mat::CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix: rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = {e[0].get<double>(), e[1].get<double>()};
      } else {
        throw ParseError("matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json to_json(const mat::CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

games::Game parse_game(const json& j) {
  if (!j.is_object()) throw ParseError("game: expected a JSON object");
  if (j.contains("g")) return games::Game(parse_rmatrix(j.at("g"), "game.g"));
  if (j.contains("p") && j.contains("u")) {
    const auto p = parse_vector(j.at("p"), "game.p");
    return games::game_from_prior_payoff(p, parse_rmatrix(j.at("u"), "game.u"));
  }
  throw ParseError("game: expected \"g\" or both \"p\" and \"u\"");
}

channels::Channel parse_channel(const json& j) {
  if (!j.is_object()) throw ParseError("channel: expected a JSON object");
  const auto& kind_j = require(j, "kind", "channel");
  if (!kind_j.is_string()) throw ParseError("channel: \"kind\" must be a string");
  const auto kind = kind_j.get<std::string>();
  if (kind == "kraus") {
    const auto din = count(require(j, "din", "kraus channel"), "kraus channel.din");
    const auto dout = count(require(j, "dout", "kraus channel"), "kraus channel.dout");
    const auto& ops = require(j, "ops", "kraus channel");
    if (!ops.is_array() || ops.empty()) throw ParseError("kraus channel: ops must be a non-empty array");
    std::vector<mat::CMatrix> kraus;
    for (const auto& op : ops) kraus.push_back(parse_cmatrix(op));
    return channels::Channel(din, dout, std::move(kraus));
  }
  const json params = j.contains("params") ? j.at("params") : json::object();
  return parse_named(kind, params);
}

json to_json(const closedform::UtilityResult& r) {
  json out{{"value", r.value},
           {"provenance", r.provenance},
           {"lower_bound", r.lower_bound},
           {"converged", r.converged}};
  if (r.encoding) {
    json enc = json::array();
    for (const auto& rho : *r.encoding) enc.push_back(to_json(rho.matrix()));
    out["encoding"] = std::move(enc);
  }
  if (r.decoding) {
    json dec = json::array();
    for (const auto& e : r.decoding->elements()) dec.push_back(to_json(e));
    out["decoding"] = std::move(dec);
  }
  if (r.decision) out["decision"] = *r.decision;
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("\"" + path + "\": " + e.what());
  }
}

}  // namespace chanwit::io
