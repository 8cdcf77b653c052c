#include "sl3lab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sl3lab/error.hpp"

namespace sl3lab::io {

json to_json(const BlockLayout& layout) {
  json j;
  j["blocks"] = layout.block_count();
  j["primes"] = layout.primes();
  j["dims"] = layout.dims();
  std::vector<std::size_t> planes, padding;
  for (std::size_t k = 0; k < layout.block_count(); ++k) {
    planes.push_back(layout.plane_dim(k));
    padding.push_back(layout.padding(k));
  }
  j["plane_dims"] = planes;
  j["padding"] = padding;
  j["offsets"] = layout.offsets();
  j["total_dim"] = layout.total_dim();
  return j;
}

BlockLayout layout_from_json(const json& j) {
  if (!j.contains("dims")) throw Error(ErrorKind::Io, "layout manifest lacks 'dims'");
  return BlockLayout(j.at("dims").get<std::vector<std::size_t>>());
}

void write_layout(const fs::path& path, const BlockLayout& layout) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << to_json(layout).dump(2) << '\n';
}

BlockLayout read_layout(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  try {
    return layout_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const fs::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

Matrix read_matrix_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Io, path.string() + ": bad number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::Io, path.string() + ": ragged CSV");
    rows.push_back(std::move(row));
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<std::string> write_block_operator(const fs::path& dir, const std::string& stem,
                                              const BlockOperator& op) {
  std::vector<std::string> files;
  for (std::size_t k = 0; k < op.block_count(); ++k) {
    files.push_back(stem + "_b" + std::to_string(k) + ".csv");
    write_matrix_csv(dir / files.back(), op.block(k));
  }
  return files;
}

BlockOperator read_block_operator(const fs::path& dir, const std::vector<std::string>& files,
                                  const BlockLayout& layout) {
  std::vector<Matrix> blocks;
  for (const auto& f : files) blocks.push_back(read_matrix_csv(dir / f));
  return BlockOperator(layout, std::move(blocks));
}

fs::path write_decomposition(const fs::path& dir, const TensorDecomposition& t) {
  fs::create_directories(dir);
  json j;
  j["layout"] = to_json(t.layout());
  j["candidate_diagonal"] = t.is_candidate_diagonal();
  j["rank"] = t.rank();
  j["terms"] = json::array();
  for (std::size_t i = 0; i < t.rank(); ++i) {
    json term;
    term["a"] = write_block_operator(dir, "a" + std::to_string(i), t.left(i));
    term["b"] = write_block_operator(dir, "b" + std::to_string(i), t.right(i));
    j["terms"].push_back(term);
  }
  const fs::path manifest = dir / "decomp.json";
  std::ofstream out(manifest);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + manifest.string());
  out << j.dump(2) << '\n';
  return manifest;
}

TensorDecomposition read_decomposition(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + manifest.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, manifest.string() + ": " + e.what());
  }
  const BlockLayout layout = layout_from_json(j.at("layout"));
  const fs::path dir = manifest.parent_path();
  std::vector<BlockOperator> a, b;
  for (const auto& term : j.at("terms")) {
    a.push_back(read_block_operator(dir, term.at("a").get<std::vector<std::string>>(), layout));
    b.push_back(read_block_operator(dir, term.at("b").get<std::vector<std::string>>(), layout));
  }
  return TensorDecomposition(std::move(a), std::move(b), j.value("candidate_diagonal", false));
}

void write_plane_csv(std::ostream& out, const ProjectivePlane& plane) {
  out << "index,c0,c1,c2\n";
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const auto& c = plane.point_of(i).coords;
    out << i << ',' << c[0] << ',' << c[1] << ',' << c[2] << '\n';
  }
}

void write_family_csv(std::ostream& out, const std::vector<SignedPermutation>& family) {
  out << "operator,row,col,sign\n";
  for (std::size_t j = 0; j < family.size(); ++j)
    for (std::size_t x = 0; x < family[j].dim(); ++x)
      out << j << ',' << family[j].target(x) << ',' << x << ',' << family[j].sign(x) << '\n';
}

namespace {

// Factor vectors, one array per column.
json columns_json(const Matrix& m) {
  json cols = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) col.push_back(m(i, j));
    cols.push_back(col);
  }
  return cols;
}

}  // namespace

json to_json(const SliceReport& r) {
  return {{"subset", r.subset},
          {"slice_norms", r.slice_norms},
          {"mass", r.mass},
          {"gamma_upper_bound", r.gamma_bound},
          {"bound", r.bound},
          {"pairing_total", r.pairing_total},
          {"trace_target", r.trace_target},
          {"mass_within_bound", r.mass_within_bound},
          {"lower_bound_holds", r.lower_bound_holds}};
}

json to_json(const GapReport& r) {
  return {{"p", r.p},
          {"dimension", r.dimension},
          {"includes_sign", r.includes_sign},
          {"invariant_dim_permutations", r.invariant_dim_permutations},
          {"invariant_dim_full", r.invariant_dim_full},
          {"invariant_dim", r.invariant_dim},
          {"lambda2", r.lambda2},
          {"gap", r.gap},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"generator_residuals", r.generator_residuals},
          {"worst_generators", r.worst_generators}};
}

json to_json(const AttemptCandidate& c) {
  return {{"rank", c.rank()}, {"dim", c.dim()}, {"xi", columns_json(c.xi)}, {"eta", columns_json(c.eta)}};
}

json to_json(const MinimizeResult& r) {
  return {{"eps_hat", r.eps_hat},
          {"best_start", r.best_start},
          {"start_eps", r.start_eps},
          {"candidate", to_json(r.candidate)}};
}

json to_json(const Classification& c) {
  json j;
  j["class"] = c.bounded ? "bounded" : "unbounded";
  if (c.bounded) {
    j["bound"] = c.bound;
    json mult = json::object();
    for (const auto& [d, count] : c.multiplicities) mult[std::to_string(d)] = count;
    j["multiplicities"] = mult;
  }
  return j;
}

json to_json(const FalsifyReport& r) {
  json j;
  j["eps"] = r.eps;
  j["generator_count"] = r.generator_count;
  j["commutator_bounds"] = r.commutator_bounds;
  j["threshold"] = r.threshold;
  j["hypothesis_holds"] = r.hypothesis_holds;
  j["vacuous"] = r.vacuous;
  if (r.vacuous) j["note"] = "eps >= 2: every nonzero candidate attains this level";
  j["blocks"] = json::array();
  for (const auto& b : r.blocks) {
    json jb{{"block", b.block},
            {"prime", b.prime},
            {"plane_dim", b.plane_dim},
            {"slice_mass", b.slice_mass},
            {"pairing_total", b.pairing_total},
            {"mass_lower_bound_holds", b.mass_lower_bound_holds},
            {"residual_total", b.residual_total},
            {"aggregate_bound", b.aggregate_bound},
            {"aggregate_holds", b.aggregate_holds},
            {"effective_ratio", b.effective_ratio},
            {"zero_slices_removed", b.zero_slices_removed},
            {"selection_holds", b.selection_holds},
            {"candidate_residual", b.candidate_residual},
            {"candidate_residual_sum", b.candidate_residual_sum},
            {"verdict", to_string(b.verdict)},
            {"witness_at_eps", b.witness_at_eps},
            {"candidate", to_json(b.candidate)}};
    jb["selected_e"] = b.selected_e ? json(*b.selected_e) : json(nullptr);
    j["blocks"].push_back(jb);
  }
  return j;
}

}  // namespace sl3lab::io
