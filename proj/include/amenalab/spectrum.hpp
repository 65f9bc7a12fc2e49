#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amenalab/rational.hpp"

namespace amenalab {

/// Invalid user-supplied data. `field()` names the offending input so that
/// front ends can report it ("values: not strictly decreasing at index 2").
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class SpectrumKind { geometric, harmonic, explicit_list };

inline std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::geometric: return "geometric";
    case SpectrumKind::harmonic: return "harmonic";
    case SpectrumKind::explicit_list: return "explicit";
  }
  return "unknown";
}

inline SpectrumKind parse_spectrum_kind(const std::string& name) {
  if (name == "geometric") return SpectrumKind::geometric;
  if (name == "harmonic") return SpectrumKind::harmonic;
  if (name == "explicit") return SpectrumKind::explicit_list;
  throw ValidationError("kind", "unknown spectrum kind '" + name + "'");
}

/// Generator parameters of a spectrum, kept for reproducibility.
struct SpectrumDescriptor {
  SpectrumKind kind = SpectrumKind::geometric;
  Rational ratio = make_rational(1, 2);
  std::vector<Rational> values;  // explicit lists only
};

/// The positive null sequence lambda_1 > lambda_2 > ... > lambda_M. The point
/// 0 belongs to the spectrum set implicitly and is never stored.
class SpectrumSequence {
 public:
  SpectrumSequence(std::vector<Rational> values, SpectrumDescriptor descriptor)
      : values_(std::move(values)), descriptor_(std::move(descriptor)) {
    validate(values_);
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<Rational>& values() const { return values_; }
  const SpectrumDescriptor& descriptor() const { return descriptor_; }

  /// lambda_n, 1-based.
  const Rational& lambda(std::size_t n) const {
    if (n < 1 || n > values_.size())
      throw std::out_of_range("spectrum index " + std::to_string(n) + " outside 1.." +
                              std::to_string(values_.size()));
    return values_[n - 1];
  }
  double lambda_d(std::size_t n) const { return lambda(n).get_d(); }

  /// Smallest stored value; every omitted point of the infinite sequence is below it.
  const Rational& tail_bound() const { return values_.back(); }

  /// First m values, same generator.
  SpectrumSequence truncate(std::size_t m) const {
    if (m < 1 || m > values_.size()) throw std::out_of_range("truncation outside 1..M");
    return SpectrumSequence(std::vector<Rational>(values_.begin(), values_.begin() + static_cast<long>(m)),
                            descriptor_);
  }

  static void validate(const std::vector<Rational>& values) {
    if (values.empty()) throw ValidationError("count", "spectrum must have at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] <= 0)
        throw ValidationError("values", "not positive at index " + std::to_string(i + 1));
      if (i > 0 && !(values[i] < values[i - 1]))
        throw ValidationError("values", "not strictly decreasing at index " + std::to_string(i + 1));
    }
  }

 private:
  std::vector<Rational> values_;
  SpectrumDescriptor descriptor_;
};

inline SpectrumSequence make_spectrum(const SpectrumDescriptor& descriptor, std::size_t count) {
  if (count == 0) throw ValidationError("count", "must be a positive integer");
  std::vector<Rational> values;
  values.reserve(count);
  switch (descriptor.kind) {
    case SpectrumKind::geometric: {
      if (!(descriptor.ratio > 0 && descriptor.ratio < 1))
        throw ValidationError("ratio", "must lie in (0, 1), got " + descriptor.ratio.get_str());
      Rational v = descriptor.ratio;
      for (std::size_t n = 0; n < count; ++n) {
        values.push_back(v);
        v *= descriptor.ratio;
      }
      break;
    }
    case SpectrumKind::harmonic:
      for (std::size_t n = 1; n <= count; ++n) values.push_back(make_rational(1, static_cast<long>(n)));
      break;
    case SpectrumKind::explicit_list:
      if (count > descriptor.values.size())
        throw ValidationError("count", "explicit list has only " +
                                           std::to_string(descriptor.values.size()) + " values");
      values.assign(descriptor.values.begin(), descriptor.values.begin() + static_cast<long>(count));
      break;
  }
  return SpectrumSequence(std::move(values), descriptor);
}

inline SpectrumSequence geometric_spectrum(const Rational& ratio, std::size_t count) {
  return make_spectrum(SpectrumDescriptor{SpectrumKind::geometric, ratio, {}}, count);
}

inline SpectrumSequence harmonic_spectrum(std::size_t count) {
  return make_spectrum(SpectrumDescriptor{SpectrumKind::harmonic, make_rational(1, 2), {}}, count);
}

inline SpectrumSequence explicit_spectrum(std::vector<Rational> values) {
  const std::size_t count = values.size();
  SpectrumDescriptor d{SpectrumKind::explicit_list, make_rational(1, 2), std::move(values)};
  return make_spectrum(d, count);
}

}  // namespace amenalab
