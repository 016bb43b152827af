// File-based front end: CSV ingestion, command dispatch and report/matrix
// emission for the `mgeom` executable.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgeom/types.hpp"

namespace mgeom::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNonConvergence = 3,
};

// Malformed input file. Row and column are 1-based file positions (0 when
// not applicable).
class IngestError : public Error {
 public:
  IngestError(const fs::path& path, std::size_t row, std::size_t column, const std::string& what);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

Matrix parse_csv(const std::string& text, const fs::path& origin, bool skip_header = false);
Matrix ingest_matrix(const fs::path& path, bool skip_header = false);
DataCloud ingest_cloud(const fs::path& path, bool skip_header = false);

// A single row or single column of positive numbers. Sums within 1e-9 of 1
// are accepted as-is, within 1e-6 renormalized with a warning, otherwise
// rejected.
Vector ingest_marginal(const fs::path& path, bool skip_header = false);

enum class Format { csv, json };

// Row-major, comma separated, 17 significant digits, trailing newline.
std::string format_csv(const Matrix& m);
void write_matrix(const fs::path& path, const Matrix& m, Format format);
// Magnitude and phase matrices written next to `path` as
// <stem>_magnitude<ext> and <stem>_phase<ext>.
void write_complex(const fs::path& path, const ComplexMatrix& m, Format format);

// `<stem>_<suffix><ext>` next to `primary`.
fs::path sibling(const fs::path& primary, const std::string& suffix);

struct RunConfig {
  std::string command;
  std::optional<fs::path> input;
  std::optional<fs::path> weights;
  std::optional<fs::path> w_query;
  std::optional<fs::path> w_key;
  std::optional<double> beta;  // nullopt = auto
  bool skip_header = false;
  std::optional<fs::path> out;
  Format format = Format::csv;
  double tol = 1e-10;
  int max_iter = 10000;

  std::string direction = "fwd";   // attention: fwd | bwd
  bool bistochastic = false;       // attention, dmap
  bool laplacians = false;         // kernel
  std::string kernel = "rbf";      // bridge, classify: rbf | attention
  std::string mu_plus = "stationary";
  std::string mu_minus = "stationary";
  std::optional<fs::path> matrix;  // classify: explicit row-stochastic operator
  std::string rho = "stationary";  // classify
  std::string phases = "edge";     // magnetic: edge | attention
  double t = 1.0;                  // embed
  int k = 2;                       // embed
  bool magnetic = false;           // embed
  std::uint64_t seed = 20240917;   // verify
};

struct Report {
  std::string command;
  Json config;
  Json results;
  int exit_code = kSuccess;

  Json to_json() const;
};

// Dispatches one command, writing any requested matrices. Library errors
// propagate to the caller.
Report run(const RunConfig& config);

// Full entry point: argument parsing, logging setup, dispatch, report output
// and error-to-exit-code mapping.
int main_entry(int argc, char** argv);

}  // namespace mgeom::cli
