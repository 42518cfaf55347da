#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvjet/geometry.hpp"
#include "curvjet/tensor_core.hpp"

namespace curvjet {

// Parse or consistency failure in a document, with the offending key path.
// `parse` covers syntax and schema problems; `consistency` marks documents
// that parse but contradict themselves (conflicting symmetry images).
class DocumentError : public std::runtime_error {
 public:
  enum class Kind { parse, consistency };

  DocumentError(std::string location, const std::string& message, Kind kind = Kind::parse)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)),
        kind_(kind) {}
  const std::string& location() const { return location_; }
  Kind kind() const { return kind_; }

 private:
  std::string location_;
  Kind kind_;
};

using MetaMap = std::map<std::string, std::string>;

// --- model documents --------------------------------------------------------

// Canonical serialization: fixed key order, sparse A with canonical
// representatives only, rationals as reduced "p/q" strings, 1-based indices.
std::string save_model_document(const ModelBundle& bundle, const MetaMap& meta = {});

// Symmetry-completes sparse A entries, rejecting inconsistent duplicates, and
// validates shapes and non-degeneracy. Identity checks (curvature symmetries,
// structure invariants) are left to `check`-style verdicts.
ModelBundle load_model_document(const std::string& text);

// --- metric jet documents ----------------------------------------------------

std::string save_jet_document(const MetricJet& g, const MetaMap& meta = {});
MetricJet load_jet_document(const std::string& text);

// --- solve result documents --------------------------------------------------

struct SolveDocument {
  std::string target;  // "tau" or "tau-taustar"
  MetricJet h;
  std::optional<TruncatedSeries> phi;
  std::optional<TruncatedSeries> xi;
  std::optional<TruncatedSeries> eta;
  RatMatrix frame;  // solver frame basis change (identity when trivial)
  MetaMap meta;
};
std::string save_solve_document(const SolveDocument& doc);
SolveDocument load_solve_document(const std::string& text);

// --- report documents ----------------------------------------------------------

struct ReportDocument {
  std::string operation;
  std::string input_digest;
  std::vector<std::pair<std::string, int>> orders;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::vector<std::pair<std::string, std::string>> diagnostics;
  bool pass = false;
};
std::string save_report_document(const ReportDocument& report);

bool all_verdicts_pass(const ReportDocument& report);

// --- helpers -------------------------------------------------------------------

std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_of(const std::string& bytes);  // "fnv1a64:<hex>"

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace curvjet
