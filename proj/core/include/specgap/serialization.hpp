#pragma once

// Audit formats: bound certificates as JSON documents, operator-lab trials as
// JSON lines, and a CSV digest of bound slack per t bucket.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "specgap/operator_lab.hpp"
#include "specgap/partition_optimizer.hpp"

namespace specgap {

using Json = nlohmann::ordered_json;

struct CertificateMeta {
  QuadratureConfig quadrature{};
  double root_tolerance = 1e-12;
  std::uint64_t seed = 0;
};

/// {points[], lambdas[], per_step[], bound, reach, meta{tolerances, seed}}.
[[nodiscard]] Json certificate_to_json(const BoundCertificate& cert, const CertificateMeta& meta);

/// Rebuilds the partition, re-evaluates it, and throws ValidityError if the
/// recorded bound differs from the recomputed one by more than `tolerance`.
[[nodiscard]] BoundCertificate certificate_from_json(const Json& doc, double tolerance = 1e-12);

/// Shortest text that parses back to the same double; used for every number we write.
[[nodiscard]] std::string format_number(double value);

/// One JSON object per line, no trailing spaces, LF endings.
void write_trial_lines(std::ostream& out, std::span<const BoundsReport> reports);
[[nodiscard]] Json trial_to_json(const BoundsReport& report);

/// CSV with header bucket_lo,bucket_hi,count,slack_min,slack_q25,slack_median,slack_q75,slack_max
/// for the N*_off slack of every report, bucketed uniformly over [t_lo, t_hi].
void write_slack_summary(std::ostream& out, std::span<const BoundsReport> reports, double t_lo,
                         double t_hi, std::size_t buckets);

} // namespace specgap
