#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlrf/bounds.hpp"
#include "mlrf/loop.hpp"

namespace mlrf {

enum class ReportFormat { Text, Json };

/// Outcome of one command, in a form both emitters share. All numbers are
/// exact; JSON carries them as canonical "p/q" strings.
struct Report {
  /// "found", "not-found", "valid" or "invalid".
  std::string status;
  std::optional<std::size_t> depth;
  Domain domain = Domain::Rational;
  bool hull_applied = false;
  std::vector<std::string> var_names;
  RankTuple tuple;
  std::vector<FarkasCert> certificates;
  std::optional<BoundReport> bound;
  /// A state (n entries) or a transition (2n entries, primed names second).
  std::optional<RatVec> witness;
  /// Free-form lines for the text form only.
  std::vector<std::string> notes;
};

/// Keys in fixed order: status, depth, domain, hull_applied, tuple,
/// certificates, bound, witness. Absent optionals are omitted.
nlohmann::ordered_json report_json(const Report &report);

std::string emit_report(const Report &report, ReportFormat format);

} // namespace mlrf
