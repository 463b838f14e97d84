#pragma once

#include <stdexcept>
#include <string>

#include "renormlab/real.hpp"

namespace renormlab {

// Every failure mode surfaces as a typed exception so callers (and the CLI
// error path) can map it to a stable machine-readable tag.
struct Error : std::runtime_error {
  Error(std::string tag_, const std::string& what_)
      : std::runtime_error(what_), tag(std::move(tag_)) {}
  std::string tag;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain_error", w) {}
};

struct FitError : Error {
  FitError(const std::string& w, Real node_ = 0, Real value_ = 0)
      : Error("fit_error", w), node(node_), value(value_) {}
  Real node, value;
};

struct ExtrapolationError : Error {
  explicit ExtrapolationError(const std::string& w) : Error("extrapolation_error", w) {}
};

struct AnalyticDomainError : Error {
  explicit AnalyticDomainError(const std::string& w) : Error("analytic_domain_error", w) {}
};

struct CompositionDomainError : Error {
  CompositionDomainError(const std::string& w, int link_, Real node_, Real value_)
      : Error("composition_domain_error", w), link(link_), node(node_), value(value_) {}
  int link;
  Real node, value;
};

struct InvalidPairError : Error {
  explicit InvalidPairError(const std::string& w) : Error("invalid_pair", w) {}
};

struct NormalizationError : Error {
  explicit NormalizationError(const std::string& w) : Error("normalization_error", w) {}
};

struct NotRenormalizableError : Error {
  explicit NotRenormalizableError(const std::string& w) : Error("not_renormalizable", w) {}
};

struct UnboundedTypeError : Error {
  explicit UnboundedTypeError(const std::string& w) : Error("unbounded_type", w) {}
};

struct CombinatoricsError : Error {
  explicit CombinatoricsError(const std::string& w) : Error("combinatorics_error", w) {}
};

struct RepresentationError : Error {
  explicit RepresentationError(const std::string& w) : Error("representation_error", w) {}
};

struct TuningError : Error {
  explicit TuningError(const std::string& w) : Error("tuning_error", w) {}
};

struct RationalTargetError : Error {
  explicit RationalTargetError(const std::string& w) : Error("rational_target", w) {}
};

struct ToleranceNotReachedError : Error {
  ToleranceNotReachedError(const std::string& w, Real best_, Real accuracy_)
      : Error("tolerance_not_reached", w), best(best_), accuracy(accuracy_) {}
  Real best, accuracy;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("config_error", w) {}
};

}  // namespace renormlab
