#include "finq/liecore.hpp"

#include <cmath>

namespace finq {

std::string to_string(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::zero: return "zero";
    case AlgebraClass::abelian: return "abelian";
    case AlgebraClass::nilpotent: return "nilpotent";
    case AlgebraClass::solvable: return "solvable";
    case AlgebraClass::semisimple: return "semisimple";
    case AlgebraClass::mixed: return "mixed";
  }
  return "unknown";
}

namespace {

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Rational pow_exact(const Rational& base, const Rational& exponent) {
  const BigInt e = boost::multiprecision::numerator(exponent);
  const auto n = e.convert_to<long>();
  Rational out = 1;
  const Rational b = n >= 0 ? base : Rational(1) / base;
  for (long i = 0; i < std::labs(n); ++i) out *= b;
  return out;
}

double pow_double(const Rational& base, const Rational& exponent) {
  return std::pow(base.convert_to<double>(), exponent.convert_to<double>());
}

}  // namespace

double scaled_value(const ScaledConstant& m, const Rational& epsilon) {
  if (is_integer(m.exponent)) return (m.coefficient * pow_exact(epsilon, m.exponent)).convert_to<double>();
  return m.coefficient.convert_to<double>() * pow_double(epsilon, m.exponent);
}

ContractionReport contract(const ContractionFamily& family, const std::vector<Rational>& schedule) {
  const auto& alg = family.algebra;
  const std::size_t n = alg.size();
  if (family.exponents.size() != n) throw DomainError("one contraction exponent per generator");

  ContractionReport rep;
  rep.original = structure_constants(alg);
  rep.limit = StructureConstants<Rational>(n, alg.labels);

  bool have_order = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& c = rep.original(i, j, k);
        if (c == 0) continue;
        const Rational e = family.exponents[i] + family.exponents[j] - family.exponents[k];
        if (e < 0)
          throw DomainError("contraction diverges: [" + alg.labels[i] + "," + alg.labels[j] + "] -> " +
                            alg.labels[k] + " scales as eps^" + format_scalar(e));
        rep.monomials.push_back({i, j, k, c, e});
        if (e == 0) rep.limit.set_bracket(i, j, k, c);
        else if (!have_order || e < rep.symbolic_order) {
          rep.symbolic_order = e;
          have_order = true;
        }
      }

  for (const Rational& param : schedule) {
    if (param <= 0) throw DomainError("schedule values must be positive");
    SchedulePoint pt;
    pt.parameter = param;
    pt.epsilon = family.parameter == ScheduleParameter::inverse_n ? Rational(1) / param : param;

    bool all_exact = true;
    Rational max_exact = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        BracketDeviation dev{i, j, 0, std::nullopt};
        bool exact = true;
        Rational worst = 0;
        for (const auto& m : rep.monomials) {
          if (m.i != i || m.j != j || m.exponent == 0) continue;
          const double v = std::abs(scaled_value(m, pt.epsilon));
          dev.value = std::max(dev.value, v);
          if (is_integer(m.exponent)) {
            Rational a = m.coefficient * pow_exact(pt.epsilon, m.exponent);
            if (a < 0) a = -a;
            if (a > worst) worst = a;
          } else {
            exact = false;
          }
        }
        if (dev.value == 0.0) continue;
        if (exact) {
          dev.exact = worst;
          dev.value = worst.convert_to<double>();
          if (worst > max_exact) max_exact = worst;
        } else {
          all_exact = false;
        }
        pt.max_deviation = std::max(pt.max_deviation, dev.value);
        pt.brackets.push_back(dev);
      }
    if (all_exact) pt.max_deviation_exact = max_exact;

    // Independent float route: rescale the matrices and re-solve.
    std::vector<Mat<double>> scaled;
    const double eps = pt.epsilon.convert_to<double>();
    for (std::size_t i = 0; i < n; ++i)
      scaled.push_back(alg.basis[i].cast<double>() * std::pow(eps, family.exponents[i].convert_to<double>()));
    const auto numeric = structure_constants(MatrixAlgebra<double>::make(std::move(scaled), alg.labels, 1e-12));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double sym = 0.0;
          for (const auto& m : rep.monomials)
            if (m.i == i && m.j == j && m.k == k) sym = scaled_value(m, pt.epsilon);
          const double num = numeric(i, j, k);
          if (sym != 0.0)
            pt.numeric_max_relative_error =
                std::max(pt.numeric_max_relative_error, std::abs(num - sym) / std::abs(sym));
          else
            pt.numeric_max_absolute_error = std::max(pt.numeric_max_absolute_error, std::abs(num));
        }
    rep.points.push_back(std::move(pt));
  }

  if (rep.points.size() >= 2) {
    const auto& a = rep.points[rep.points.size() - 2];
    const auto& b = rep.points.back();
    if (a.max_deviation > 0 && b.max_deviation > 0 && a.epsilon != b.epsilon)
      rep.convergence_order = std::log(b.max_deviation / a.max_deviation) /
                              std::log(b.epsilon.convert_to<double>() / a.epsilon.convert_to<double>());
  }

  rep.original_killing = is_semisimple(rep.original);
  rep.limit_killing = is_semisimple(rep.limit);
  rep.limit_class = classify(rep.limit);
  return rep;
}

}  // namespace finq
