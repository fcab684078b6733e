#include "specgap/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <ostream>
#include <vector>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

Json check_json(const std::optional<BoundCheck>& check) {
  if (!check) return nullptr;
  return Json{{"bound", check->bound}, {"slack", check->slack}, {"passed", check->passed}};
}

// Linear interpolation between order statistics of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace

Json certificate_to_json(const BoundCertificate& cert, const CertificateMeta& meta) {
  Json doc;
  doc["points"] = cert.partition.points();
  doc["lambdas"] = cert.partition.lambdas();
  doc["per_step"] = cert.per_step;
  doc["bound"] = cert.bound;
  doc["reach"] = cert.reach;
  doc["meta"] = Json{{"tolerances",
                      {{"quadrature_abs", meta.quadrature.abs_tolerance},
                       {"max_subdivisions", meta.quadrature.max_subdivisions},
                       {"root", meta.root_tolerance}}},
                     {"seed", meta.seed}};
  return doc;
}

BoundCertificate certificate_from_json(const Json& doc, double tolerance) {
  QuadratureConfig quad;
  if (doc.contains("meta")) {
    const Json& tol = doc.at("meta").at("tolerances");
    quad.abs_tolerance = tol.at("quadrature_abs").get<double>();
    quad.max_subdivisions = tol.at("max_subdivisions").get<int>();
  }
  BoundCertificate cert = evaluate(Partition(doc.at("points").get<std::vector<double>>()), quad);
  const double recorded = doc.at("bound").get<double>();
  if (!(std::abs(recorded - cert.bound) <= tolerance)) {
    throw ValidityError("certificate bound " + format_number(recorded) +
                        " does not match re-evaluated " + format_number(cert.bound));
  }
  return cert;
}

std::string format_number(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json trial_to_json(const BoundsReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["dims"] = {r.dim_sigma, r.dim_Sigma};
  j["layout"] = to_string(r.layout);
  j["t"] = r.t;
  j["theta"] = r.theta;
  j["bounds"] = Json{{"n_off_star", check_json(r.n_off_star)},
                     {"ms", check_json(r.ms_bound)},
                     {"general", check_json(r.general_bound)}};
  j["enclosure_ok"] = r.enclosure_ok;
  j["gap_ok"] = r.gap_ok;
  j["rank_ok"] = r.rank_ok;
  j["component_distance"] = r.component_distance;
  j["passed"] = r.passed();
  return j;
}

void write_trial_lines(std::ostream& out, std::span<const BoundsReport> reports) {
  for (const BoundsReport& r : reports) out << trial_to_json(r).dump() << '\n';
}

void write_slack_summary(std::ostream& out, std::span<const BoundsReport> reports, double t_lo,
                         double t_hi, std::size_t buckets) {
  if (buckets == 0) throw DomainError("write_slack_summary: need at least one bucket");
  std::vector<std::vector<double>> slack(buckets);
  const double width = (t_hi - t_lo) / static_cast<double>(buckets);
  for (const BoundsReport& r : reports) {
    if (!r.n_off_star) continue;
    std::size_t b = 0;
    if (width > 0.0) {
      b = static_cast<std::size_t>(std::max(0.0, std::floor((r.t - t_lo) / width)));
      b = std::min(b, buckets - 1);
    }
    slack[b].push_back(r.n_off_star->slack);
  }
  out << "bucket_lo,bucket_hi,count,slack_min,slack_q25,slack_median,slack_q75,slack_max\n";
  for (std::size_t b = 0; b < buckets; ++b) {
    std::vector<double>& s = slack[b];
    std::sort(s.begin(), s.end());
    out << format_number(t_lo + width * static_cast<double>(b)) << ','
        << format_number(t_lo + width * static_cast<double>(b + 1)) << ',' << s.size();
    if (s.empty()) {
      out << ",,,,,\n";
      continue;
    }
    for (const double q : {0.0, 0.25, 0.5, 0.75, 1.0}) out << ',' << format_number(quantile(s, q));
    out << '\n';
  }
}

} // namespace specgap
