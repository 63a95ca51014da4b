// Polynomial maps between coordinate spaces: composition, exact Jacobians,
// tangent lifts, vector-field brackets, and sampled/symbolic equality.
#pragma once

#include "dgd/poly.hpp"
#include "dgd/rng.hpp"

#include <functional>
#include <vector>

namespace dgd {

class PolyMap {
  public:
    PolyMap() : domainDim_(0) {}
    PolyMap(std::size_t domainDim, std::vector<Poly> components);

    static PolyMap identity(std::size_t n);
    static PolyMap constant(std::size_t domainDim, const Vec& value);
    // x |-> A x + b (b omitted means linear).
    static PolyMap linear(const Mat& A);
    static PolyMap affine(const Mat& A, const Vec& b);
    // (f, g): x |-> (f(x), g(x)) for same domain.
    static PolyMap pairing(const PolyMap& f, const PolyMap& g);
    // f x g: (x, y) |-> (f(x), g(y)).
    static PolyMap product(const PolyMap& f, const PolyMap& g);
    // Coordinate projection selecting `indices` from a domain of size n.
    static PolyMap projection(std::size_t n, const std::vector<std::size_t>& indices);

    std::size_t domainDim() const { return domainDim_; }
    std::size_t codomainDim() const { return comps_.size(); }
    const std::vector<Poly>& components() const { return comps_; }
    const Poly& component(std::size_t i) const { return comps_.at(i); }
    unsigned degree() const;
    bool isLinear() const;  // linear homogeneous in coordinates
    // Matrix of a linear map; throws if not linear homogeneous.
    Mat linearMatrix() const;

    Vec eval(const Vec& x) const;
    PolyMap compose(const PolyMap& inner) const;      // this o inner
    PolyMap after(const PolyMap& inner) const { return compose(inner); }
    std::vector<std::vector<Poly>> jacobian() const;  // [i][j] = d comps_i / d x_j
    Mat jacobianAt(const Vec& x) const;
    // (x, v) |-> (f(x), Jf(x) v) on doubled coordinates.
    PolyMap tangentLift() const;

    PolyMap operator+(const PolyMap& o) const;
    PolyMap operator-(const PolyMap& o) const;
    bool operator==(const PolyMap& o) const {
        return domainDim_ == o.domainDim_ && comps_ == o.comps_;
    }
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

    std::string str() const;

  private:
    std::size_t domainDim_;
    std::vector<Poly> comps_;
};

// [X,Y]^i = X^j d_j Y^i - Y^j d_j X^i for square polynomial vector fields.
PolyMap vfBracket(const PolyMap& X, const PolyMap& Y);

// Random point in Q^n with small-height entries.
Vec samplePoint(Rng& rng, std::size_t n);

// True iff f - g vanishes on `trials` sampled points (dimension-checked).
bool equalOnSamples(const PolyMap& f, const PolyMap& g, Rng& rng, std::size_t trials);

// Random polynomial of degree <= maxDeg in nvars variables.
Poly samplePoly(Rng& rng, std::size_t nvars, unsigned maxDeg);
PolyMap samplePolyMap(Rng& rng, std::size_t domainDim, std::size_t codomainDim, unsigned maxDeg);

} // namespace dgd
