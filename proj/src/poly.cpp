#include "dgd/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace dgd {

Poly Poly::constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    p.addTerm(MultiIndex(nvars, 0), c);
    return p;
}

Poly Poly::var(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::out_of_range("Poly::var: index out of range");
    MultiIndex e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e, Rat(1));
}

Poly Poly::monomial(std::size_t nvars, const MultiIndex& e, const Rat& c) {
    if (e.size() != nvars) throw std::invalid_argument("Poly::monomial: bad multi-index");
    Poly p(nvars);
    p.addTerm(e, c);
    return p;
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned t = 0;
        for (unsigned k : e) t += k;
        if (t > d) d = t;
    }
    return d;
}

Rat Poly::constantTerm() const {
    auto it = terms_.find(MultiIndex(nvars_, 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::addTerm(const MultiIndex& e, const Rat& c) {
    if (e.size() != nvars_) throw std::invalid_argument("Poly::addTerm: bad multi-index");
    if (c.isZero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Poly+: variable count mismatch");
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.addTerm(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(Rat(-1)); }
Poly Poly::operator-() const { return scaled(Rat(-1)); }

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Poly*: variable count mismatch");
    Poly r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            MultiIndex e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            r.addTerm(e, c1 * c2);
        }
    return r;
}

Poly Poly::scaled(const Rat& s) const {
    Poly r(nvars_);
    if (s.isZero()) return r;
    for (const auto& [e, c] : terms_) r.addTerm(e, c * s);
    return r;
}

Rat Poly::eval(const Vec& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Poly::eval: dimension mismatch");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

Poly Poly::diff(std::size_t varIndex) const {
    if (varIndex >= nvars_) throw std::out_of_range("Poly::diff: index out of range");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[varIndex] == 0) continue;
        MultiIndex d = e;
        d[varIndex] -= 1;
        r.addTerm(d, c * Rat(static_cast<long>(e[varIndex])));
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& args, std::size_t domainVars) const {
    if (args.size() != nvars_) throw std::invalid_argument("Poly::substitute: arity mismatch");
    std::size_t m = domainVars;
    for (const auto& a : args)
        if (a.vars() != m) throw std::invalid_argument("Poly::substitute: ragged args");
    Poly r(m);
    for (const auto& [e, c] : terms_) {
        Poly t = Poly::constant(m, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t = t * args[i];
        r = r + t;
    }
    return r;
}

Poly Poly::embed(std::size_t newNvars, std::size_t offset) const {
    if (offset + nvars_ > newNvars) throw std::invalid_argument("Poly::embed: does not fit");
    Poly r(newNvars);
    for (const auto& [e, c] : terms_) {
        MultiIndex ne(newNvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) ne[offset + i] = e[i];
        r.addTerm(ne, c);
    }
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*x" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Poly operator*(const Rat& s, const Poly& p) { return p.scaled(s); }

} // namespace dgd
