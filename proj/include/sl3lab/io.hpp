#pragma once

// File formats: layouts are JSON manifests; block operators are one dense CSV
// per block; a decomposition is a JSON manifest listing the CSV files of
// every a_i and b_i block, relative to the manifest's directory.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sl3lab/attempt.hpp"
#include "sl3lab/falsifier.hpp"
#include "sl3lab/gap.hpp"
#include "sl3lab/norms.hpp"
#include "sl3lab/plane.hpp"
#include "sl3lab/slicing.hpp"

namespace sl3lab::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

json to_json(const BlockLayout& layout);
BlockLayout layout_from_json(const json& j);
void write_layout(const fs::path& path, const BlockLayout& layout);
BlockLayout read_layout(const fs::path& path);

std::string format_double(double v);
void write_matrix_csv(const fs::path& path, const Matrix& m);
Matrix read_matrix_csv(const fs::path& path);

/// Writes <stem>_b<k>.csv per block into dir; returns the file names.
std::vector<std::string> write_block_operator(const fs::path& dir, const std::string& stem,
                                              const BlockOperator& op);
BlockOperator read_block_operator(const fs::path& dir, const std::vector<std::string>& files,
                                  const BlockLayout& layout);

/// Writes <dir>/decomp.json plus CSVs; returns the manifest path.
fs::path write_decomposition(const fs::path& dir, const TensorDecomposition& t);
TensorDecomposition read_decomposition(const fs::path& manifest);

void write_plane_csv(std::ostream& out, const ProjectivePlane& plane);
/// One row per nonzero entry: operator, row, col, sign.
void write_family_csv(std::ostream& out, const std::vector<SignedPermutation>& family);

json to_json(const SliceReport& r);
json to_json(const GapReport& r);
json to_json(const AttemptCandidate& c);
json to_json(const MinimizeResult& r);
json to_json(const Classification& c);
json to_json(const FalsifyReport& r);

}  // namespace sl3lab::io
