// model_io.hpp -- JSON model files.
//
// A model file is a single JSON object:
//
//   {
//     "schema": 1,
//     "type": "mg1" | "qbd",
//     "m": 1,
//     "a_start": -1,
//     "A": [ [[...]], ... ],   // m x m blocks A_-1, A_0, ...
//     "B": [ [[...]], ... ],   // boundary blocks B_0, ... (qbd: B_0 only)
//     "nu": 0.3                // optional arrival rate
//   }
//
// "qbd" requires exactly three A blocks and a single B block; the second
// boundary block is implied (B_1 = A_1).  Malformed JSON raises
// parse-error with line/column; well-formed JSON violating the model
// rules raises validation-error naming the offending field.

#pragma once

#include <string>

#include "model.hpp"

namespace qcr {

MG1Model parse_model(const std::string& text);

// Inverse of parse_model: parse(serialize(m)) reproduces m with
// bit-identical coefficients.
std::string serialize_model(const MG1Model& model);

// Read and parse a file; filesystem problems raise io-error.
MG1Model load_model_file(const std::string& path);

}  // namespace qcr
