// Sparse multivariate polynomials over Rat, keyed by exponent multi-index.
// Normal form: map ordering + no stored zero coefficients, so operator== is
// symbolic equality.
#pragma once

#include "dgd/mat.hpp"
#include "dgd/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace dgd {

using MultiIndex = std::vector<unsigned>;

class Poly {
  public:
    Poly() : nvars_(0) {}
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rat& c);
    static Poly var(std::size_t nvars, std::size_t i);
    static Poly monomial(std::size_t nvars, const MultiIndex& e, const Rat& c);

    std::size_t vars() const { return nvars_; }
    bool isZero() const { return terms_.empty(); }
    const std::map<MultiIndex, Rat>& terms() const { return terms_; }
    unsigned degree() const;
    // Constant term (coefficient of the zero multi-index).
    Rat constantTerm() const;

    void addTerm(const MultiIndex& e, const Rat& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rat& s) const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Rat eval(const Vec& point) const;
    Poly diff(std::size_t varIndex) const;
    // Substitutes args[i] for variable i; args live in `domainVars` variables.
    Poly substitute(const std::vector<Poly>& args, std::size_t domainVars) const;
    // Same polynomial viewed in a larger variable space, variables shifted by `offset`.
    Poly embed(std::size_t newNvars, std::size_t offset) const;

    std::string str() const;

  private:
    std::size_t nvars_;
    std::map<MultiIndex, Rat> terms_;
};

Poly operator*(const Rat& s, const Poly& p);

} // namespace dgd
