// Exact rational scalar: arbitrary-precision, always in lowest terms with
// positive denominator. Thin value wrapper over GMP's mpq_class.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace dgd {

class Rat {
  public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long n, long d) : q_(n, d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses "p", "-p", or "p/q".
    static Rat parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat::parse: bad literal '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool isZero() const { return q_ == 0; }
    bool isOne() const { return q_ == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.isZero()) throw std::domain_error("Rat: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    Rat inv() const {
        if (isZero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1 / q_));
    }

    // Canonical "p/q" form, denominator always present.
    std::string str() const {
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

  private:
    mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r);

} // namespace dgd

#include <ostream>
namespace dgd {
inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }
} // namespace dgd
