#include <algorithm>
#include <cmath>
#include <string>

#include "prime_race/special_functions.hpp"

namespace prime_race::analytic {

void ZeroTable::validate() const {
  if (!(precision > 0.0) || !std::isfinite(precision)) throw DomainError("zero precision must be positive");
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    const double g = ordinates[i];
    if (!std::isfinite(g) || !(g > 0.0)) throw DomainError("zero ordinates must be positive and finite");
    if (i > 0 && !(g > ordinates[i - 1])) throw DomainError("zero ordinates must be strictly ascending");
  }
}

void ZeroSearchConfig::validate() const {
  if (!(scan_step > 0.0) || !(precision > 0.0) || !(min_step > 0.0)) {
    throw DomainError("zero search steps and precision must be positive");
  }
}

namespace {

struct Sample {
  double t;
  double z;
};

class Scanner {
 public:
  Scanner(const LFunctionId& id, const ZeroSearchConfig& cfg) : id_(id), cfg_(cfg) {}

  double z(double t) const { return critical_line_z(id_, t); }

  // Scans consecutive samples, bisecting sign changes and zooming in on
  // |Z| dips that do not cross zero.
  void scan(const std::vector<Sample>& samples, double step) {
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const Sample& a = samples[i];
      const Sample& b = samples[i + 1];
      if (a.z == 0.0) {
        if (a.t > 0.0) roots_.push_back(a.t);
        continue;
      }
      if ((a.z < 0) != (b.z < 0) && b.z != 0.0) {
        roots_.push_back(bisect(a, b));
        continue;
      }
      if (i > 0 && step / 2 >= cfg_.min_step) {
        const Sample& prev = samples[i - 1];
        const bool same_sign = (prev.z < 0) == (a.z < 0) && (a.z < 0) == (b.z < 0);
        if (same_sign && std::fabs(a.z) < std::fabs(prev.z) && std::fabs(a.z) < std::fabs(b.z)) {
          refine(prev, a, b, step / 2);
        }
      }
    }
    const Sample& last = samples.back();
    if (last.z == 0.0 && last.t > 0.0) roots_.push_back(last.t);
  }

  std::vector<double> take_roots() {
    std::sort(roots_.begin(), roots_.end());
    std::vector<double> out;
    for (double r : roots_) {
      if (out.empty() || r - out.back() > 2 * cfg_.precision) out.push_back(r);
    }
    return out;
  }

 private:
  // Re-samples [prev.t, next.t] at half the step.
  void refine(const Sample& prev, const Sample& mid, const Sample& next, double step) {
    std::vector<Sample> fine;
    fine.push_back(prev);
    for (double t = prev.t + step; t < next.t - 0.5 * step; t += step) {
      fine.push_back(std::fabs(t - mid.t) < 0.25 * step ? mid : Sample{t, z(t)});
    }
    fine.push_back(next);
    Scanner inner(id_, cfg_);
    inner.scan(fine, step);
    roots_.insert(roots_.end(), inner.roots_.begin(), inner.roots_.end());
  }

  double bisect(Sample a, Sample b) const {
    while (b.t - a.t > 2 * cfg_.precision) {
      const double m = 0.5 * (a.t + b.t);
      if (m <= a.t || m >= b.t) break;
      const double zm = z(m);
      if (zm == 0.0) return m;
      if ((zm < 0) == (a.z < 0)) {
        a = {m, zm};
      } else {
        b = {m, zm};
      }
    }
    return 0.5 * (a.t + b.t);
  }

  LFunctionId id_;
  ZeroSearchConfig cfg_;
  std::vector<double> roots_;
};

}  // namespace

ZeroTable find_zeros(const LFunctionId& id, double t_max, const ZeroSearchConfig& cfg) {
  cfg.validate();
  if (id.kind() == LFunctionId::Kind::quadratic) {
    throw UnsupportedError("zero finding is not certified for " + id.name() +
                           "; load a zero table instead");
  }
  if (!std::isfinite(t_max) || !(t_max > 0.0)) throw DomainError("t_max must be positive");
  if (t_max > kMaxZeroHeight) {
    throw CapacityError("t_max above " + std::to_string(static_cast<int>(kMaxZeroHeight)) +
                        " is beyond the desk-scale cap");
  }
  Scanner scanner(id, cfg);
  std::vector<Sample> samples;
  const auto n = static_cast<std::size_t>(std::ceil(t_max / cfg.scan_step));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = std::min(t_max, static_cast<double>(k) * cfg.scan_step);
    samples.push_back({t, scanner.z(t)});
    if (t >= t_max) break;
  }
  scanner.scan(samples, cfg.scan_step);

  ZeroTable table;
  table.id = id;
  table.precision = cfg.precision;
  for (double r : scanner.take_roots()) {
    if (r > 0.0 && r <= t_max) table.ordinates.push_back(r);
  }
  return table;
}

}  // namespace prime_race::analytic
