#include "finq/qset.hpp"

namespace finq {

std::string to_string(MetricPreset preset) {
  switch (preset) {
    case MetricPreset::zero: return "zero";
    case MetricPreset::berezin: return "berezin";
    case MetricPreset::hyperbolic: return "hyperbolic";
    case MetricPreset::custom: return "custom";
  }
  return "unknown";
}

MetricPreset parse_metric_preset(const std::string& name) {
  if (name == "zero") return MetricPreset::zero;
  if (name == "berezin") return MetricPreset::berezin;
  if (name == "hyperbolic") return MetricPreset::hyperbolic;
  throw DomainError("unknown metric preset '" + name + "' (zero, berezin, hyperbolic)");
}

}  // namespace finq
