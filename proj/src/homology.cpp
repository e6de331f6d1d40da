#include "ergosol/homology.hpp"

#include <cmath>
#include <string>

#include "ergosol/errors.hpp"

namespace ergosol {

std::vector<std::string> HomologyBasis::validate() {
  std::vector<std::string> warnings;
  if (rank < 1) throw ConfigError("homology basis needs rank >= 1");
  if (degree < 1) throw ConfigError("cycle degree must be >= 1");
  if (ambient_dimension < degree)
    throw ConfigError("ambient dimension must be >= the cycle degree");
  if (labels.empty()) {
    labels.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i)
      labels.push_back("C" + std::to_string(i + 1));
  }
  if (labels.size() != rank)
    throw ConfigError("expected one label per basis cycle");
  for (const auto& row : periods)
    if (row.size() != periods.front().size())
      throw ConfigError("period matrix rows must share one length");
  if (!periods.empty() && periods.size() != rank)
    throw ConfigError("period matrix must have one row per basis cycle");
  if (volumes.empty()) volumes.assign(rank, 1.0);
  if (volumes.size() != rank)
    throw ConfigError("expected one volume per basis cycle");
  for (double v : volumes)
    if (!(v > 0.0)) throw ConfigError("cycle volumes must be positive");

  if (intersection_form) {
    const auto& q = *intersection_form;
    if (q.size() != rank)
      throw ConfigError("intersection form must be rank x rank");
    for (const auto& row : q)
      if (row.size() != rank)
        throw ConfigError("intersection form must be rank x rank");
    // Expected symmetry of the degree-k pairing in dimension n.
    const long exponent =
        static_cast<long>(degree) *
        static_cast<long>(ambient_dimension - degree);
    const std::int64_t sign = (exponent % 2 == 0) ? 1 : -1;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        if (q[i][j] != sign * q[j][i]) {
          warnings.push_back(
              "intersection form is not " +
              std::string(sign == 1 ? "symmetric" : "antisymmetric") +
              " as the degree/dimension parity dictates");
          i = rank;  // one warning is enough
          break;
        }
  }
  return warnings;
}

NormalizedTarget normalize_target(const TargetClass& a,
                                  const HomologyBasis& basis) {
  if (a.coordinates.size() != basis.rank)
    throw ConfigError("target class has " +
                      std::to_string(a.coordinates.size()) +
                      " coordinates for a rank-" + std::to_string(basis.rank) +
                      " basis");
  NormalizedTarget out;
  Rat total(0);
  for (std::size_t i = 0; i < a.coordinates.size(); ++i) {
    const Rat& c = a.coordinates[i];
    if (c == Rat(0)) continue;
    out.cycles.push_back(i);
    out.signs.push_back(c > Rat(0) ? +1 : -1);
    out.lambda.push_back(c > Rat(0) ? c : -c);
    total += out.lambda.back();
  }
  if (out.cycles.empty())
    throw ConfigError("cannot normalize the zero class");
  for (Rat& l : out.lambda) l /= total;
  out.scale = total;
  return out;
}

std::string to_string(ObstructionVerdict v) {
  switch (v) {
    case ObstructionVerdict::inapplicable: return "inapplicable";
    case ObstructionVerdict::unobstructed: return "unobstructed";
    case ObstructionVerdict::obstructed: return "obstructed";
  }
  return "unknown";
}

Rat self_intersection(const TargetClass& a, const HomologyBasis& basis) {
  if (a.coordinates.size() != basis.rank)
    throw ConfigError("target class size does not match the basis rank");
  if (!basis.intersection_form)
    throw ConfigError("self-intersection needs the intersection form");
  const auto& q = *basis.intersection_form;
  Rat self(0);
  for (std::size_t i = 0; i < basis.rank; ++i)
    for (std::size_t j = 0; j < basis.rank; ++j)
      self += a.coordinates[i] * Rat(q[i][j]) * a.coordinates[j];
  return self;
}

ObstructionVerdict embedding_obstruction(const TargetClass& a,
                                         const HomologyBasis& basis) {
  if (a.coordinates.size() != basis.rank)
    throw ConfigError("target class size does not match the basis rank");
  if ((basis.ambient_dimension - basis.degree) % 2 != 0)
    return ObstructionVerdict::inapplicable;
  if (!basis.intersection_form)
    throw ConfigError(
        "even codimension needs the intersection form to decide the "
        "self-intersection obstruction");
  return self_intersection(a, basis) == Rat(0)
             ? ObstructionVerdict::unobstructed
             : ObstructionVerdict::obstructed;
}

RSClass rs_class(const SolenoidSpec& spec, const HomologyBasis& basis,
                 const Rat& measure_scale) {
  if (measure_scale <= Rat(0))
    throw ConfigError("measure scale must be positive");
  for (const BlockSpec& b : spec.blocks())
    if (b.homology_coords.size() != basis.rank)
      throw ConfigError("block '" + b.label + "' carries " +
                        std::to_string(b.homology_coords.size()) +
                        " homology coordinates for a rank-" +
                        std::to_string(basis.rank) + " basis");

  RSClass out;
  const MeasuredPartition& part = spec.partition();
  const std::vector<double> mu = part.measures();
  const double scale = to_double(measure_scale);

  out.raw.assign(basis.rank, 0.0);
  out.volume_scale = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = 0; j < basis.rank; ++j)
      out.raw[j] += mu[i] * static_cast<double>(spec.block(i).homology_coords[j]);
    out.volume_scale += mu[i] * spec.block(i).volume;
  }
  out.normalized.resize(basis.rank);
  for (std::size_t j = 0; j < basis.rank; ++j) {
    out.normalized[j] = out.raw[j] / out.volume_scale;
    out.raw[j] *= scale;
  }

  if (part.mode() == PartitionMode::exact) {
    out.exact = true;
    out.raw_exact.assign(basis.rank, Rat(0));
    const std::vector<Rat> lam = part.exact_measures();
    for (std::size_t i = 0; i < spec.size(); ++i)
      for (std::size_t j = 0; j < basis.rank; ++j)
        out.raw_exact[j] += lam[i] * Rat(spec.block(i).homology_coords[j]);
    for (Rat& c : out.raw_exact) c *= measure_scale;
    // Doubles mirror the exact values so the two views cannot drift.
    for (std::size_t j = 0; j < basis.rank; ++j)
      out.raw[j] = to_double(out.raw_exact[j]);
  }
  return out;
}

}  // namespace ergosol
