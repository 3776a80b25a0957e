#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "chanwit/channels.hpp"
#include "chanwit/closedform.hpp"
#include "chanwit/error.hpp"
#include "chanwit/games.hpp"

namespace chanwit::io {

using nlohmann::json;

/// Malformed or semantically invalid JSON input.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Complex matrices are arrays of rows; each entry is a number or [re, im].
mat::CMatrix parse_cmatrix(const json& j);
json to_json(const mat::CMatrix& m);

/// {"g": [[...], ...]} or {"p": [...], "u": [[...], ...]}.
games::Game parse_game(const json& j);

/// Named channels: {"kind": "pauli", "params": {"lambda": [..4..]}}.
/// Raw channels: {"kind": "kraus", "din": d, "dout": d', "ops": [M, ...]}.
///
/// Named kinds and their params:
///   identity {d}; unitary {U}; dephasing {lambda, d | basis};
///   trace_class {sigma, din}; erasure {lambda, d}; qc {povm: [M..] | "trine"};
///   depolarizing {lambda, d}; pauli {lambda: [l0,l1,l2,l3]};
///   amplitude_damping | ampdamp {eta}; shifted_depolarizing {lambda, sigma};
///   cloning | cloning_1to2 {d}; reduced_cloning {d}.
channels::Channel parse_channel(const json& j);

json to_json(const closedform::UtilityResult& r);

/// Reads and parses a JSON file; throws ParseError naming the path.
json read_json_file(const std::string& path);

}  // namespace chanwit::io
