#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mgeom/bridges.hpp"
#include "mgeom/geometry.hpp"
#include "mgeom/normalize.hpp"
#include "mgeom/operators.hpp"
#include "mgeom/spectral.hpp"
#include "mgeom/verification.hpp"

namespace mgeom::cli {

IngestError::IngestError(const fs::path& path, std::size_t row, std::size_t column,
                         const std::string& what)
    : Error([&] {
        std::string msg = path.string();
        if (row > 0) msg += ": row " + std::to_string(row);
        if (column > 0) msg += ", column " + std::to_string(column);
        return msg + ": " + what;
      }()),
      row_(row),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json residual(double value, double tolerance) {
  return Json{{"value", value}, {"tolerance", tolerance}, {"passed", value <= tolerance}};
}

Json config_json(const RunConfig& c) {
  Json j;
  auto opt_path = [](const std::optional<fs::path>& p) -> Json {
    return p ? Json(p->string()) : Json(nullptr);
  };
  j["input"] = opt_path(c.input);
  j["weights"] = opt_path(c.weights);
  j["w_query"] = opt_path(c.w_query);
  j["w_key"] = opt_path(c.w_key);
  j["beta"] = c.beta ? Json(*c.beta) : Json("auto");
  j["out"] = opt_path(c.out);
  j["format"] = c.format == Format::csv ? "csv" : "json";
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  if (c.command == "attention") {
    j["direction"] = c.direction;
    j["bistochastic"] = c.bistochastic;
  } else if (c.command == "dmap") {
    j["bistochastic"] = c.bistochastic;
  } else if (c.command == "kernel") {
    j["laplacians"] = c.laplacians;
  } else if (c.command == "bridge" || c.command == "classify") {
    j["kernel"] = c.kernel;
    j["mu_plus"] = c.mu_plus;
    j["mu_minus"] = c.mu_minus;
    if (c.command == "classify") j["matrix"] = opt_path(c.matrix);
  } else if (c.command == "magnetic") {
    j["phases"] = c.phases;
  } else if (c.command == "embed") {
    j["t"] = c.t;
    j["k"] = c.k;
    j["magnetic"] = c.magnetic;
  } else if (c.command == "verify") {
    j["seed"] = c.seed;
  }
  return j;
}

// Everything derived from the input cloud that most commands need.
struct Geometry {
  DataCloud cloud;
  std::optional<InteractionWeights> weights;
  Bidivergence bidiv;
  Matrix d2;
  double beta;
};

std::optional<InteractionWeights> load_weights(const RunConfig& c) {
  if (c.w_query || c.w_key) {
    if (!c.w_query || !c.w_key) throw DomainError("--wq and --wk must be given together");
    return InteractionWeights::from_factors(ingest_matrix(*c.w_query, c.skip_header),
                                            ingest_matrix(*c.w_key, c.skip_header));
  }
  if (c.weights) return InteractionWeights::from_matrix(ingest_matrix(*c.weights, c.skip_header));
  return std::nullopt;
}

Geometry load_geometry(const RunConfig& c) {
  if (!c.input) throw DomainError("--input is required for '" + c.command + "'");
  DataCloud cloud = ingest_cloud(*c.input, c.skip_header);
  auto weights = load_weights(c);
  const GramMatrix g = weights ? generalized_gram(cloud, *weights) : gram(cloud);
  Bidivergence bidiv = bidivergence(g);
  Matrix d2 = squared_distance(bidiv);
  const double beta = c.beta ? Beta{*c.beta}.value() : median_inverse_bandwidth(d2);
  spdlog::info("loaded {} samples x {} features, beta = {}", cloud.size(), cloud.dim(), beta);
  return {std::move(cloud), std::move(weights), std::move(bidiv), std::move(d2), beta};
}

Vector degree_distribution(const Matrix& d2, double beta) {
  const Vector z = rbf_kernel(d2, Beta{beta}).values.rowwise().sum();
  return z / z.sum();
}

void maybe_write(const RunConfig& c, const Matrix& m, const std::string& suffix = {}) {
  if (!c.out) return;
  write_matrix(suffix.empty() ? *c.out : sibling(*c.out, suffix), m, c.format);
}

SolverOptions solver(const RunConfig& c) {
  if (!(c.tol > 0.0)) throw DomainError("--tol must be positive");
  if (c.max_iter < 1) throw DomainError("--max-iter must be at least 1");
  return {c.tol, c.max_iter};
}

Report run_dmap(const RunConfig& c, Report r) {
  const Geometry g = load_geometry(c);
  r.results["beta"] = g.beta;
  const Vector pi = degree_distribution(g.d2, g.beta);
  if (c.bistochastic) {
    const StochasticOperator p = dmap_bistochastic(g.d2, Beta{g.beta}, solver(c));
    r.results["kind"] = "bi";
    r.results["marginal_residual"] = residual(p.marginal_residual(), c.tol);
    r.results["symmetry_defect"] = (p.values - p.values.transpose()).cwiseAbs().maxCoeff();
    maybe_write(c, p.values);
    return r;
  }
  const StochasticOperator p = dmap(g.d2, Beta{g.beta});
  const StochasticOperator via_degrees = dmap_from_kernel(rbf_kernel(g.d2, Beta{g.beta}));
  r.results["kind"] = "row";
  r.results["row_sum_residual"] = residual(p.marginal_residual(), 1e-12);
  r.results["degree_path_deviation"] =
      residual((p.values - via_degrees.values).cwiseAbs().maxCoeff(), 1e-12);
  r.results["stationary"] = vector_json(pi);
  maybe_write(c, p.values);
  maybe_write(c, pi, "pi");
  return r;
}

Report run_attention(const RunConfig& c, Report r) {
  const Geometry g = load_geometry(c);
  if (c.direction != "fwd" && c.direction != "bwd") {
    throw DomainError("--direction must be fwd or bwd");
  }
  const bool fwd = c.direction == "fwd";
  r.results["beta"] = g.beta;
  StochasticOperator a;
  double tol = 1e-12;
  if (c.bistochastic) {
    a = attention_bistochastic(g.bidiv, Beta{g.beta}, fwd ? Direction::fwd : Direction::bwd,
                               solver(c));
    tol = c.tol;
  } else {
    a = fwd ? attention_forward(g.bidiv, Beta{g.beta}) : attention_backward(g.bidiv, Beta{g.beta});
  }
  r.results["kind"] = std::string(to_string(a.kind));
  r.results["marginal_residual"] = residual(a.marginal_residual(), tol);
  maybe_write(c, a.values);
  return r;
}

Report run_kernel(const RunConfig& c, Report r) {
  const Geometry g = load_geometry(c);
  const KernelMatrix k = rbf_kernel(g.d2, Beta{g.beta});
  const auto [fwd, bwd] = directional_kernels(g.bidiv, Beta{g.beta});
  r.results["beta"] = g.beta;
  r.results["factorization_deviation"] =
      residual((k.values - fwd.cwiseProduct(bwd)).cwiseAbs().maxCoeff(), 1e-12);
  maybe_write(c, k.values);
  if (c.laplacians) {
    const LaplacianPair lap = laplacians(k);
    const Vector ones = Vector::Ones(k.values.rows());
    r.results["laplacian_null_residual"] =
        residual((lap.combinatorial * ones).cwiseAbs().maxCoeff(), 1e-12);
    r.results["rw_laplacian_null_residual"] =
        residual((lap.random_walk * ones).cwiseAbs().maxCoeff(), 1e-12);
    r.results["degrees"] = vector_json(lap.degrees);
    maybe_write(c, lap.combinatorial, "laplacian");
    maybe_write(c, lap.random_walk, "rw_laplacian");
  }
  return r;
}

Vector resolve_marginal(const std::string& spec, const Vector& stationary, bool skip_header) {
  if (spec == "stationary") return stationary;
  return ingest_marginal(spec, skip_header);
}

Report run_bridge(const RunConfig& c, Report r) {
  const Geometry g = load_geometry(c);
  const SolverOptions opts = solver(c);
  Matrix log_kernel;
  Vector stationary;
  if (c.kernel == "rbf") {
    log_kernel = -g.beta * g.d2;
    stationary = degree_distribution(g.d2, g.beta);
  } else if (c.kernel == "attention") {
    log_kernel = -g.beta * g.bidiv.fwd;
    stationary = stationary_distribution(attention_forward(g.bidiv, Beta{g.beta}),
                                         {std::min(c.tol, 1e-12), std::max(c.max_iter, 100000)});
  } else {
    throw DomainError("--kernel must be rbf or attention");
  }
  const Vector mu_plus = resolve_marginal(c.mu_plus, stationary, c.skip_header);
  const Vector mu_minus = resolve_marginal(c.mu_minus, stationary, c.skip_header);
  if (mu_plus.size() != g.cloud.size() || mu_minus.size() != g.cloud.size()) {
    throw DimensionError("marginals must have one entry per sample");
  }
  const BridgeSolution sol = solve_bridge_log(log_kernel, mu_plus, mu_minus, opts);
  const RegimeReport regime = classify_regime(sol.forward, mu_plus, mu_minus, c.tol);

  r.results["beta"] = g.beta;
  r.results["iterations"] = sol.potentials.iterations;
  r.results["marginal_residual"] = residual(sol.potentials.residual, c.tol);
  r.results["propagation_residual"] = residual(
      (mu_plus.transpose() * sol.forward.values - mu_minus.transpose()).cwiseAbs().maxCoeff(),
      c.tol);
  r.results["regime"] = std::string(to_string(regime.regime));
  r.results["max_current"] = regime.max_current;
  r.results["current_threshold"] = regime.current_threshold;
  r.results["log_u_plus"] = vector_json(sol.potentials.log_u);
  r.results["log_u_minus"] = vector_json(sol.potentials.log_v);

  Matrix potentials(sol.potentials.u.size(), 2);
  potentials.col(0) = sol.potentials.u;
  potentials.col(1) = sol.potentials.v;
  maybe_write(c, sol.coupling);
  maybe_write(c, sol.forward.values, "forward");
  maybe_write(c, potentials, "potentials");
  return r;
}

Report run_classify(const RunConfig& c, Report r) {
  StochasticOperator p;
  Vector stationary;
  if (c.matrix) {
    p = {ingest_matrix(*c.matrix, c.skip_header), StochasticKind::row};
    if (p.values.rows() != p.values.cols()) throw DimensionError("operator must be square");
    if (p.values.minCoeff() < 0.0 || p.marginal_residual() > 1e-9) {
      throw DomainError("operator file is not row-stochastic within 1e-9");
    }
    stationary = stationary_distribution(p, {std::min(c.tol, 1e-12), std::max(c.max_iter, 100000)});
  } else {
    const Geometry g = load_geometry(c);
    r.results["beta"] = g.beta;
    if (c.kernel == "rbf") {
      p = dmap(g.d2, Beta{g.beta});
      stationary = degree_distribution(g.d2, g.beta);
    } else if (c.kernel == "attention") {
      p = attention_forward(g.bidiv, Beta{g.beta});
      stationary =
          stationary_distribution(p, {std::min(c.tol, 1e-12), std::max(c.max_iter, 100000)});
    } else {
      throw DomainError("--kernel must be rbf or attention");
    }
  }
  const Vector mu_plus = resolve_marginal(c.mu_plus, stationary, c.skip_header);
  const Vector mu_minus = resolve_marginal(c.mu_minus, stationary, c.skip_header);
  const RegimeReport rep = classify_regime(p, mu_plus, mu_minus, c.tol);
  r.results["regime"] = std::string(to_string(rep.regime));
  r.results["marginal_gap"] = rep.marginal_gap;
  r.results["stationarity_residual"] = residual(rep.stationarity_residual, c.tol);
  r.results["max_current"] = rep.max_current;
  r.results["current_threshold"] = rep.current_threshold;
  maybe_write(c, rep.currents);
  return r;
}

Report run_magnetic(const RunConfig& c, Report r) {
  const Geometry g = load_geometry(c);
  const StochasticOperator p = dmap(g.d2, Beta{g.beta});
  const Vector pi = degree_distribution(g.d2, g.beta);
  Matrix theta;
  if (c.phases == "edge") {
    theta = edge_phases(g.cloud, g.weights ? *g.weights : InteractionWeights::identity(g.cloud.dim()),
                        Beta{g.beta});
  } else if (c.phases == "attention") {
    const StochasticOperator a = attention_forward(g.bidiv, Beta{g.beta});
    const Vector pi_plus =
        stationary_distribution(a, {std::min(c.tol, 1e-12), std::max(c.max_iter, 100000)});
    theta = attention_gauge(pi_plus, a);
  } else {
    throw DomainError("--phases must be edge or attention");
  }
  const ComplexOperator op = magnetic_operator(p, theta);
  const MagneticFlux flux = magnetic_flux(pi, op);
  const ComplexMatrix h = conjugate_hermitize(op, pi);
  const SpectralDecomposition dec = decompose(h, pi);

  r.results["beta"] = g.beta;
  r.results["max_phase"] = theta.cwiseAbs().maxCoeff();
  r.results["hermitian_defect"] = residual((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  r.results["max_magnetic_current"] = flux.current.cwiseAbs().maxCoeff();
  r.results["eigenvalues"] = vector_json(dec.eigenvalues);
  if (c.out) {
    // Written from the stored magnitude/phase pair so magnitudes stay exact.
    write_matrix(sibling(*c.out, "magnitude"), op.magnitudes.values, c.format);
    write_matrix(sibling(*c.out, "phase"), op.phases, c.format);
    write_matrix(sibling(*c.out, "current"), flux.current, c.format);
  }
  return r;
}

Report run_embed(const RunConfig& c, Report r) {
  const Geometry g = load_geometry(c);
  const StochasticOperator p = dmap(g.d2, Beta{g.beta});
  const Vector pi = degree_distribution(g.d2, g.beta);
  SpectralDecomposition dec;
  if (c.magnetic) {
    const Matrix theta = edge_phases(
        g.cloud, g.weights ? *g.weights : InteractionWeights::identity(g.cloud.dim()), Beta{g.beta});
    dec = decompose(conjugate_hermitize(magnetic_operator(p, theta), pi), pi);
  } else {
    dec = decompose(conjugate_symmetrize(p, pi), pi);
  }
  const Embedding emb = diffusion_embedding(dec, c.t, c.k);
  r.results["beta"] = g.beta;
  r.results["eigenvalues"] = vector_json(dec.eigenvalues);
  r.results["degenerate"] = dec.degenerate;
  r.results["complex"] = emb.is_complex;
  if (dec.degenerate) spdlog::warn("degenerate eigenvalues: coordinates within a block are in solver order");
  if (c.out) {
    if (emb.is_complex) {
      write_complex(*c.out, emb.coordinates, c.format);
    } else {
      write_matrix(*c.out, emb.real(), c.format);
    }
  }
  return r;
}

Report run_verify(const RunConfig& c, Report r) {
  VerificationInput in;
  in.seed = c.seed;
  if (c.input) {
    const Geometry g = load_geometry(c);
    in.cloud = g.cloud;
    in.weights = g.weights;
    in.beta = g.beta;
  } else {
    in.beta = c.beta ? *c.beta : 1.0;
  }
  const VerificationReport rep = run_verification(in);
  r.results["beta"] = in.beta;
  Json criteria = Json::array();
  for (const auto& crit : rep.criteria) {
    Json checks = Json::array();
    for (const auto& chk : crit.checks) {
      Json jc{{"name", chk.name},
              {"value", chk.value},
              {"tolerance", chk.tolerance},
              {"comparison", chk.upper_bound ? "<=" : ">"},
              {"passed", chk.passed}};
      if (!chk.note.empty()) jc["note"] = chk.note;
      checks.push_back(std::move(jc));
    }
    criteria.push_back(Json{{"id", crit.id},
                            {"title", crit.title},
                            {"passed", crit.passed()},
                            {"checks", std::move(checks)}});
  }
  r.results["criteria"] = std::move(criteria);
  r.results["all_passed"] = rep.all_passed();
  r.exit_code = rep.all_passed() ? kSuccess : kVerificationFailed;
  return r;
}

void add_common(CLI::App* sub, RunConfig& c, std::string& beta, std::string& format,
                std::optional<fs::path>& report_path, bool needs_input) {
  auto* input = sub->add_option("-i,--input", c.input, "point cloud CSV (one sample per row)");
  if (needs_input) input->required();
  sub->add_option("-w,--weights", c.weights, "D x D interaction matrix CSV");
  sub->add_option("--wq", c.w_query, "query factor CSV (D x d)");
  sub->add_option("--wk", c.w_key, "key factor CSV (D x d)");
  sub->add_option("-b,--beta", beta, "inverse temperature or 'auto'")->default_val("auto");
  sub->add_flag("--header", c.skip_header, "skip the first line of every CSV input");
  sub->add_option("-o,--out", c.out, "primary output file; extra outputs go next to it");
  sub->add_option("--format", format, "matrix output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");
  sub->add_option("--report", report_path, "write the JSON report here instead of stdout");
  sub->add_option("--tol", c.tol, "solver tolerance")->default_val(1e-10);
  sub->add_option("--max-iter", c.max_iter, "solver iteration cap")->default_val(10000);
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("mgeom");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("MG_LOG_LEVEL")) {
    const std::string v = env;
    if (v == "error") level = spdlog::level::err;
    else if (v == "warn") level = spdlog::level::warn;
    else if (v == "info") level = spdlog::level::info;
    else if (v == "debug") level = spdlog::level::debug;
  }
  spdlog::set_level(level);
}

}  // namespace

Matrix parse_csv(const std::string& text, const fs::path& origin, bool skip_header) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell =
          trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start));
      ++col;
      if (cell.empty()) throw IngestError(origin, line_no, col, "empty cell");
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (*first == '+') ++first;
      const auto res = std::from_chars(first, last, value);
      if (res.ec != std::errc() || res.ptr != last) {
        throw IngestError(origin, line_no, col, "not a number: '" + std::string(cell) + "'");
      }
      if (!std::isfinite(value)) throw IngestError(origin, line_no, col, "non-finite value");
      row.push_back(value);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw IngestError(origin, line_no, 0,
                        "expected " + std::to_string(width) + " columns, found " +
                            std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IngestError(origin, 0, 0, "no data rows");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Matrix ingest_matrix(const fs::path& path, bool skip_header) {
  return parse_csv(read_file(path), path, skip_header);
}

DataCloud ingest_cloud(const fs::path& path, bool skip_header) {
  Matrix m = ingest_matrix(path, skip_header);
  if (m.rows() < 2) throw IngestError(path, 0, 0, "a point cloud needs at least 2 rows");
  return DataCloud(std::move(m));
}

Vector ingest_marginal(const fs::path& path, bool skip_header) {
  const Matrix m = ingest_matrix(path, skip_header);
  if (m.rows() != 1 && m.cols() != 1) {
    throw IngestError(path, 0, 0, "a marginal must be a single row or a single column");
  }
  Vector p = m.rows() == 1 ? Vector(m.row(0).transpose()) : Vector(m.col(0));
  for (Index k = 0; k < p.size(); ++k) {
    if (!(p(k) > 0.0)) {
      const std::size_t row = m.rows() == 1 ? 1 : static_cast<std::size_t>(k) + 1;
      const std::size_t col = m.rows() == 1 ? static_cast<std::size_t>(k) + 1 : 1;
      throw IngestError(path, row, col, "marginal entries must be strictly positive");
    }
  }
  const double gap = std::abs(p.sum() - 1.0);
  if (gap > 1e-6) {
    throw IngestError(path, 0, 0, "marginal sums to " + format_double(p.sum()) + ", not 1");
  }
  if (gap > 1e-9) {
    spdlog::warn("{}: marginal sums to {}; renormalizing", path.string(), format_double(p.sum()));
    p /= p.sum();
  }
  return p;
}

std::string format_csv(const Matrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const fs::path& path, const Matrix& m, Format format) {
  if (format == Format::csv) {
    write_file(path, format_csv(m));
  } else {
    write_file(path, matrix_json(m).dump() + "\n");
  }
}

void write_complex(const fs::path& path, const ComplexMatrix& m, Format format) {
  write_matrix(sibling(path, "magnitude"), m.cwiseAbs(), format);
  Matrix phase(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) phase(i, j) = std::arg(m(i, j));
  }
  write_matrix(sibling(path, "phase"), phase, format);
}

fs::path sibling(const fs::path& primary, const std::string& suffix) {
  fs::path out = primary;
  out.replace_filename(primary.stem().string() + "_" + suffix + primary.extension().string());
  return out;
}

Json Report::to_json() const {
  return Json{{"command", command},
              {"config", config},
              {"results", results},
              {"exit_code", exit_code}};
}

Report run(const RunConfig& config) {
  Report r;
  r.command = config.command;
  r.config = config_json(config);
  r.results = Json::object();
  if (config.command == "dmap") return run_dmap(config, std::move(r));
  if (config.command == "attention") return run_attention(config, std::move(r));
  if (config.command == "kernel") return run_kernel(config, std::move(r));
  if (config.command == "bridge") return run_bridge(config, std::move(r));
  if (config.command == "classify") return run_classify(config, std::move(r));
  if (config.command == "magnetic") return run_magnetic(config, std::move(r));
  if (config.command == "embed") return run_embed(config, std::move(r));
  if (config.command == "verify") return run_verify(config, std::move(r));
  throw DomainError("unknown command '" + config.command + "'");
}

int main_entry(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Markov geometry toolkit: attention, diffusion maps, Schrodinger bridges"};
  app.require_subcommand(1);
  RunConfig config;
  std::string beta = "auto";
  std::string format = "csv";
  std::optional<fs::path> report_path;

  auto* dmap_cmd = app.add_subcommand("dmap", "diffusion-map operator");
  add_common(dmap_cmd, config, beta, format, report_path, true);
  dmap_cmd->add_flag("--bistochastic", config.bistochastic, "Sinkhorn-normalized variant");

  auto* attn_cmd = app.add_subcommand("attention", "self-attention operators");
  add_common(attn_cmd, config, beta, format, report_path, true);
  attn_cmd->add_option("--direction", config.direction, "fwd (row) or bwd (column)")
      ->check(CLI::IsMember({"fwd", "bwd"}));
  attn_cmd->add_flag("--bistochastic", config.bistochastic, "Sinkhorn-normalized variant");

  auto* kernel_cmd = app.add_subcommand("kernel", "RBF kernel and graph Laplacians");
  add_common(kernel_cmd, config, beta, format, report_path, true);
  kernel_cmd->add_flag("--laplacians", config.laplacians, "also emit both Laplacians");

  auto* bridge_cmd = app.add_subcommand("bridge", "discrete Schrodinger bridge");
  add_common(bridge_cmd, config, beta, format, report_path, true);
  bridge_cmd->add_option("--kernel", config.kernel, "reference kernel")
      ->check(CLI::IsMember({"rbf", "attention"}));
  bridge_cmd->add_option("--mu-plus", config.mu_plus, "source marginal CSV or 'stationary'");
  bridge_cmd->add_option("--mu-minus", config.mu_minus, "sink marginal CSV or 'stationary'");

  auto* classify_cmd = app.add_subcommand("classify", "EQ / NESS / NE regime of an operator");
  add_common(classify_cmd, config, beta, format, report_path, false);
  classify_cmd->add_option("--matrix", config.matrix, "row-stochastic operator CSV");
  classify_cmd->add_option("--kernel", config.kernel, "operator built from --input")
      ->check(CLI::IsMember({"rbf", "attention"}));
  classify_cmd->add_option("--mu-plus", config.mu_plus, "marginal CSV or 'stationary'");
  classify_cmd->add_option("--mu-minus", config.mu_minus, "marginal CSV or 'stationary'");

  auto* magnetic_cmd = app.add_subcommand("magnetic", "magnetic diffusion operator");
  add_common(magnetic_cmd, config, beta, format, report_path, true);
  magnetic_cmd->add_option("--phases", config.phases, "phase field source")
      ->check(CLI::IsMember({"edge", "attention"}));

  auto* embed_cmd = app.add_subcommand("embed", "diffusion coordinates");
  add_common(embed_cmd, config, beta, format, report_path, true);
  embed_cmd->add_option("-t,--time", config.t, "diffusion time")->default_val(1.0);
  embed_cmd->add_option("-k,--coords", config.k, "number of coordinates")->default_val(2);
  embed_cmd->add_flag("--magnetic", config.magnetic, "embed the magnetic operator");

  auto* verify_cmd = app.add_subcommand("verify", "run the identity-verification suite");
  add_common(verify_cmd, config, beta, format, report_path, false);
  verify_cmd->add_option("--seed", config.seed, "seed for the random battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.format = format == "json" ? Format::json : Format::csv;
  if (beta != "auto") {
    double value = 0.0;
    const auto res = std::from_chars(beta.data(), beta.data() + beta.size(), value);
    if (res.ec != std::errc() || res.ptr != beta.data() + beta.size()) {
      std::cerr << "error: --beta must be a number or 'auto'\n";
      return kUsageError;
    }
    config.beta = value;
  }

  try {
    const Report report = run(config);
    const std::string text = report.to_json().dump(2) + "\n";
    if (report_path) {
      write_file(*report_path, text);
    } else {
      std::cout << text;
    }
    return report.exit_code;
  } catch (const ConvergenceError& e) {
    spdlog::error("{}", e.what());
    return kNonConvergence;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kUsageError;
  }
}

}  // namespace mgeom::cli
