#include "mlrf/report.hpp"

#include <cstdint>
#include <limits>
#include <sstream>

namespace mlrf {

namespace {

using json = nlohmann::ordered_json;

json rationals(const std::vector<Rational> &xs) {
  json out = json::array();
  for (const auto &x : xs)
    out.push_back(to_string(x));
  return out;
}

json rationals(const RatVec &xs) {
  json out = json::array();
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    out.push_back(to_string(xs[i]));
  return out;
}

std::string witness_name(const std::vector<std::string> &names, std::size_t i) {
  if (i < names.size())
    return names[i];
  if (i < 2 * names.size())
    return names[i - names.size()] + "'";
  return "v" + std::to_string(i + 1);
}

const char *domain_name(Domain d) { return d == Domain::Integer ? "int" : "rat"; }

} // namespace

json report_json(const Report &report) {
  json out;
  out["status"] = report.status;
  if (report.depth)
    out["depth"] = *report.depth;
  out["domain"] = domain_name(report.domain);
  out["hull_applied"] = report.hull_applied;

  json tuple = json::array();
  for (const auto &f : report.tuple.components) {
    json coeffs = json::object();
    for (Eigen::Index j = 0; j < f.coeffs.size(); ++j)
      coeffs[witness_name(report.var_names, std::size_t(j))] = to_string(f.coeffs[j]);
    json entry;
    entry["coeffs"] = coeffs;
    entry["const"] = to_string(f.constant);
    tuple.push_back(entry);
  }
  out["tuple"] = tuple;

  json certs = json::array();
  for (const auto &c : report.certificates) {
    json entry;
    entry["multipliers"] = rationals(c.multipliers);
    entry["slack"] = to_string(c.slack);
    entry["vacuous"] = c.vacuous;
    certs.push_back(entry);
  }
  out["certificates"] = certs;

  if (report.bound) {
    const BoundReport &b = *report.bound;
    json bound;
    json mu = json::array();
    for (const auto &w : b.mu)
      mu.push_back(rationals(w.mus));
    bound["mu"] = mu;
    bound["c"] = rationals(b.c);
    bound["d"] = rationals(b.d);
    bound["coefficient"] = to_string(b.coefficient);
    if (b.numeric)
      bound["numeric"] = to_string(*b.numeric);
    if (b.iterations) {
      // JSON integer when it fits, decimal string beyond 64 bits.
      if (*b.iterations <= std::numeric_limits<std::int64_t>::max())
        bound["iterations"] = static_cast<std::int64_t>(*b.iterations);
      else
        bound["iterations"] = b.iterations->str();
    }
    out["bound"] = bound;
  }

  if (report.witness) {
    json w = json::object();
    for (Eigen::Index i = 0; i < report.witness->size(); ++i)
      w[witness_name(report.var_names, std::size_t(i))] = to_string((*report.witness)[i]);
    out["witness"] = w;
  }
  return out;
}

std::string emit_report(const Report &report, ReportFormat format) {
  if (format == ReportFormat::Json)
    return report_json(report).dump(2) + "\n";

  std::ostringstream out;
  out << report.status;
  if (report.depth)
    out << " (depth " << *report.depth << ")";
  out << "\ndomain: " << domain_name(report.domain)
      << (report.hull_applied ? ", integer hull applied" : "") << "\n";
  for (std::size_t i = 0; i < report.tuple.depth(); ++i)
    out << "f" << i + 1 << " = "
        << format_affine(report.tuple.components[i], report.var_names) << "\n";
  if (report.bound) {
    const BoundReport &b = *report.bound;
    for (std::size_t k = 0; k < b.mu.size(); ++k) {
      out << "mu for phase " << k + 2 << ":";
      for (const auto &m : b.mu[k].mus)
        out << " " << to_string(m);
      out << "\n";
    }
    out << "c:";
    for (const auto &v : b.c)
      out << " " << to_string(v);
    out << "\nd:";
    for (const auto &v : b.d)
      out << " " << to_string(v);
    out << "\ncoefficient: " << to_string(b.coefficient) << "\n";
    out << "M = " << b.m_definition;
    if (b.m_value)
      out << " = " << to_string(*b.m_value);
    out << "\n";
    if (b.numeric)
      out << "bound: " << to_string(*b.numeric) << " (at most " << b.iterations->str()
          << " iterations)\n";
  }
  if (report.witness) {
    out << "witness:";
    for (Eigen::Index i = 0; i < report.witness->size(); ++i)
      out << " " << witness_name(report.var_names, std::size_t(i)) << "="
          << to_string((*report.witness)[i]);
    out << "\n";
  }
  for (const auto &n : report.notes)
    out << n << "\n";
  return out.str();
}

} // namespace mlrf
