#include "dgd/polymap.hpp"

#include <sstream>
#include <stdexcept>

namespace dgd {

PolyMap::PolyMap(std::size_t domainDim, std::vector<Poly> components)
    : domainDim_(domainDim), comps_(std::move(components)) {
    for (const auto& p : comps_)
        if (p.vars() != domainDim_)
            throw std::invalid_argument("PolyMap: component variable count mismatch");
}

PolyMap PolyMap::identity(std::size_t n) {
    std::vector<Poly> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(Poly::var(n, i));
    return PolyMap(n, std::move(c));
}

PolyMap PolyMap::constant(std::size_t domainDim, const Vec& value) {
    std::vector<Poly> c;
    c.reserve(value.size());
    for (const auto& v : value) c.push_back(Poly::constant(domainDim, v));
    return PolyMap(domainDim, std::move(c));
}

PolyMap PolyMap::linear(const Mat& A) {
    std::vector<Poly> c;
    c.reserve(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Poly p(A.cols());
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (!A.at(i, j).isZero()) p = p + A.at(i, j) * Poly::var(A.cols(), j);
        c.push_back(p);
    }
    return PolyMap(A.cols(), std::move(c));
}

PolyMap PolyMap::affine(const Mat& A, const Vec& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("PolyMap::affine: size mismatch");
    PolyMap lin = linear(A);
    std::vector<Poly> c = lin.comps_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + Poly::constant(A.cols(), b[i]);
    return PolyMap(A.cols(), std::move(c));
}

PolyMap PolyMap::pairing(const PolyMap& f, const PolyMap& g) {
    if (f.domainDim() != g.domainDim())
        throw std::invalid_argument("PolyMap::pairing: domain mismatch");
    std::vector<Poly> c = f.comps_;
    c.insert(c.end(), g.comps_.begin(), g.comps_.end());
    return PolyMap(f.domainDim(), std::move(c));
}

PolyMap PolyMap::product(const PolyMap& f, const PolyMap& g) {
    std::size_t n = f.domainDim() + g.domainDim();
    std::vector<Poly> c;
    for (const auto& p : f.comps_) c.push_back(p.embed(n, 0));
    for (const auto& p : g.comps_) c.push_back(p.embed(n, f.domainDim()));
    return PolyMap(n, std::move(c));
}

PolyMap PolyMap::projection(std::size_t n, const std::vector<std::size_t>& indices) {
    std::vector<Poly> c;
    c.reserve(indices.size());
    for (auto i : indices) c.push_back(Poly::var(n, i));
    return PolyMap(n, std::move(c));
}

unsigned PolyMap::degree() const {
    unsigned d = 0;
    for (const auto& p : comps_) d = std::max(d, p.degree());
    return d;
}

bool PolyMap::isLinear() const {
    for (const auto& p : comps_)
        for (const auto& [e, c] : p.terms()) {
            unsigned t = 0;
            for (unsigned k : e) t += k;
            if (t != 1) return false;
        }
    return true;
}

Mat PolyMap::linearMatrix() const {
    if (!isLinear()) throw std::domain_error("PolyMap::linearMatrix: map is not linear");
    Mat A(codomainDim(), domainDim_);
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (const auto& [e, c] : comps_[i].terms())
            for (std::size_t j = 0; j < domainDim_; ++j)
                if (e[j] == 1) A.at(i, j) = c;
    return A;
}

Vec PolyMap::eval(const Vec& x) const {
    Vec y(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) y[i] = comps_[i].eval(x);
    return y;
}

PolyMap PolyMap::compose(const PolyMap& inner) const {
    if (inner.codomainDim() != domainDim_)
        throw std::invalid_argument("PolyMap::compose: dimension mismatch");
    std::vector<Poly> c;
    c.reserve(comps_.size());
    for (const auto& p : comps_) c.push_back(p.substitute(inner.comps_, inner.domainDim()));
    return PolyMap(inner.domainDim(), std::move(c));
}

std::vector<std::vector<Poly>> PolyMap::jacobian() const {
    std::vector<std::vector<Poly>> J(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        J[i].reserve(domainDim_);
        for (std::size_t j = 0; j < domainDim_; ++j) J[i].push_back(comps_[i].diff(j));
    }
    return J;
}

Mat PolyMap::jacobianAt(const Vec& x) const {
    Mat J(comps_.size(), domainDim_);
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (std::size_t j = 0; j < domainDim_; ++j) J.at(i, j) = comps_[i].diff(j).eval(x);
    return J;
}

PolyMap PolyMap::tangentLift() const {
    std::size_t n = domainDim_, m = comps_.size();
    std::vector<Poly> c;
    c.reserve(2 * m);
    for (const auto& p : comps_) c.push_back(p.embed(2 * n, 0));
    for (std::size_t i = 0; i < m; ++i) {
        Poly d(2 * n);
        for (std::size_t j = 0; j < n; ++j)
            d = d + comps_[i].diff(j).embed(2 * n, 0) * Poly::var(2 * n, n + j);
        c.push_back(d);
    }
    return PolyMap(2 * n, std::move(c));
}

PolyMap PolyMap::operator+(const PolyMap& o) const {
    if (domainDim_ != o.domainDim_ || codomainDim() != o.codomainDim())
        throw std::invalid_argument("PolyMap+: dimension mismatch");
    std::vector<Poly> c;
    for (std::size_t i = 0; i < comps_.size(); ++i) c.push_back(comps_[i] + o.comps_[i]);
    return PolyMap(domainDim_, std::move(c));
}

PolyMap PolyMap::operator-(const PolyMap& o) const {
    if (domainDim_ != o.domainDim_ || codomainDim() != o.codomainDim())
        throw std::invalid_argument("PolyMap-: dimension mismatch");
    std::vector<Poly> c;
    for (std::size_t i = 0; i < comps_.size(); ++i) c.push_back(comps_[i] - o.comps_[i]);
    return PolyMap(domainDim_, std::move(c));
}

std::string PolyMap::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) os << (i ? ", " : "") << comps_[i].str();
    os << ")";
    return os.str();
}

PolyMap vfBracket(const PolyMap& X, const PolyMap& Y) {
    std::size_t n = X.domainDim();
    if (Y.domainDim() != n || X.codomainDim() != n || Y.codomainDim() != n)
        throw std::invalid_argument("vfBracket: fields must be square and same-space");
    std::vector<Poly> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly p(n);
        for (std::size_t j = 0; j < n; ++j)
            p = p + X.component(j) * Y.component(i).diff(j) -
                Y.component(j) * X.component(i).diff(j);
        c.push_back(p);
    }
    return PolyMap(n, std::move(c));
}

Vec samplePoint(Rng& rng, std::size_t n) {
    Vec x(n);
    for (auto& v : x) v = rng.rat();
    return x;
}

bool equalOnSamples(const PolyMap& f, const PolyMap& g, Rng& rng, std::size_t trials) {
    if (f.domainDim() != g.domainDim() || f.codomainDim() != g.codomainDim())
        throw std::invalid_argument("equalOnSamples: dimension mismatch");
    for (std::size_t t = 0; t < trials; ++t) {
        Vec x = samplePoint(rng, f.domainDim());
        if (f.eval(x) != g.eval(x)) return false;
    }
    return true;
}

Poly samplePoly(Rng& rng, std::size_t nvars, unsigned maxDeg) {
    Poly p(nvars);
    // Walk all multi-indices of total degree <= maxDeg; keep each with prob 1/2.
    std::function<void(MultiIndex&, std::size_t, unsigned)> walk =
        [&](MultiIndex& e, std::size_t pos, unsigned left) {
            if (pos == nvars) {
                if (rng.below(2) == 0) p.addTerm(e, rng.rat(5, 3));
                return;
            }
            for (unsigned k = 0; k <= left; ++k) {
                e[pos] = k;
                walk(e, pos + 1, left - k);
            }
            e[pos] = 0;
        };
    MultiIndex e(nvars, 0);
    walk(e, 0, maxDeg);
    return p;
}

PolyMap samplePolyMap(Rng& rng, std::size_t domainDim, std::size_t codomainDim, unsigned maxDeg) {
    std::vector<Poly> c;
    c.reserve(codomainDim);
    for (std::size_t i = 0; i < codomainDim; ++i) c.push_back(samplePoly(rng, domainDim, maxDeg));
    return PolyMap(domainDim, std::move(c));
}

} // namespace dgd
