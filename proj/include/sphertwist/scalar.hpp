#pragma once

// Exact field elements: rationals (int64 fast path, GMP on overflow) and residues mod p.

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"

namespace sphertwist {

struct Field {
    std::uint64_t p = 0; // 0 means the rationals

    static Field rational() { return Field{0}; }
    static Field prime(std::uint64_t p) {
        require(p >= 2 && p < (1ull << 62), ErrorKind::InvalidArgument, "prime out of range: " + std::to_string(p));
        for (std::uint64_t d = 2; d * d <= p; ++d)
            require(p % d != 0, ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
        return Field{p};
    }
    bool is_rational() const { return p == 0; }
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return p == 0 ? std::string("Q") : "F_" + std::to_string(p); }
    bool operator==(const Field& o) const { return p == o.p; }
    bool operator!=(const Field& o) const { return p != o.p; }
};

class Scalar {
public:
    Scalar() = default;
    Scalar(std::int64_t n, Field f = Field::rational()) : p_(f.p) {
        if (p_) {
            std::int64_t r = n % static_cast<std::int64_t>(p_);
            num_ = r < 0 ? r + static_cast<std::int64_t>(p_) : r;
        } else {
            num_ = n;
        }
    }
    static Scalar fraction(std::int64_t n, std::int64_t d, Field f = Field::rational()) {
        require(d != 0, ErrorKind::DivisionByZero, "zero denominator");
        if (f.p) return Scalar(n, f) / Scalar(d, f);
        mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
        q.canonicalize();
        return from_mpq(q);
    }
    static Scalar from_mpq(const mpq_class& q) {
        Scalar s;
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
            s.num_ = q.get_num().get_si();
            s.den_ = q.get_den().get_si();
        } else {
            s.big_ = std::make_shared<const mpq_class>(q);
        }
        return s;
    }
    // Accepts "a", "-a", "a/b"; residues are reduced into the field.
    static Scalar parse(const std::string& text, Field f = Field::rational()) {
        require(!text.empty(), ErrorKind::ParseError, "empty scalar");
        mpq_class q;
        if (q.set_str(text, 10) != 0) fail(ErrorKind::ParseError, "bad scalar '" + text + "'");
        require(q.get_den() != 0, ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
        q.canonicalize();
        if (!f.p) return from_mpq(q);
        mpz_class pz(std::to_string(f.p), 10);
        mpz_class n = q.get_num() % pz, d = q.get_den() % pz;
        if (n < 0) n += pz;
        require(d != 0, ErrorKind::DivisionByZero, "denominator divisible by " + std::to_string(f.p));
        return Scalar(static_cast<std::int64_t>(n.get_ui()), f) / Scalar(static_cast<std::int64_t>(d.get_ui()), f);
    }

    Field field() const { return Field{p_}; }
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
        return q;
    }
    std::string str() const {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.p_ != b.p_) return false;
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false; // canonical: a value fitting int64 is never stored big
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar operator-() const {
        if (p_) return Scalar(num_ == 0 ? 0 : static_cast<std::int64_t>(p_) - num_, Field{p_});
        if (!big_ && num_ != INT64_MIN) return raw(-num_, den_);
        return from_mpq(-to_mpq());
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check(a, b);
        if (a.p_) {
            unsigned __int128 s = static_cast<unsigned __int128>(a.num_) + static_cast<unsigned __int128>(b.num_);
            return Scalar(static_cast<std::int64_t>(s % a.p_), Field{a.p_});
        }
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t r;
                if (!__builtin_add_overflow(a.num_, b.num_, &r)) return raw(r, 1);
            } else {
                std::int64_t g = std::gcd(a.den_, b.den_);
                std::int64_t ad = a.den_ / g, bd = b.den_ / g, x, y, n, d;
                if (!__builtin_mul_overflow(a.num_, bd, &x) && !__builtin_mul_overflow(b.num_, ad, &y) &&
                    !__builtin_add_overflow(x, y, &n) && !__builtin_mul_overflow(a.den_, bd, &d))
                    return normalized(n, d);
            }
        }
        return from_mpq(a.to_mpq() + b.to_mpq());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check(a, b);
        if (a.p_) {
            unsigned __int128 s = static_cast<unsigned __int128>(a.num_) * static_cast<unsigned __int128>(b.num_);
            return Scalar(static_cast<std::int64_t>(s % a.p_), Field{a.p_});
        }
        if (a.is_zero() || b.is_zero()) return Scalar(0);
        if (a.is_one()) return b;
        if (b.is_one()) return a;
        if (!a.big_ && !b.big_) {
            std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
            std::int64_t n, d;
            if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &n) &&
                !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &d))
                return raw(n, d);
        }
        return from_mpq(a.to_mpq() * b.to_mpq());
    }

    Scalar inverse() const {
        require(!is_zero(), ErrorKind::DivisionByZero, "inverse of zero");
        if (p_) {
            // Fermat: a^(p-2)
            std::uint64_t e = p_ - 2, base = static_cast<std::uint64_t>(num_), r = 1;
            while (e) {
                if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * base % p_);
                base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) * base % p_);
                e >>= 1;
            }
            return Scalar(static_cast<std::int64_t>(r), Field{p_});
        }
        if (!big_ && num_ != INT64_MIN) return num_ < 0 ? raw(-den_, -num_) : raw(den_, num_);
        return from_mpq(1 / to_mpq());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Total order used only for deterministic tie-breaking.
    friend bool less_canonical(const Scalar& a, const Scalar& b) {
        if (a.p_ || (!a.big_ && !b.big_ && a.den_ == 1 && b.den_ == 1)) return a.num_ < b.num_;
        return a.to_mpq() < b.to_mpq();
    }

    bool is_integer() const { return p_ || (!big_ && den_ == 1) || (big_ && big_->get_den() == 1); }

private:
    static void check(const Scalar& a, const Scalar& b) {
        if (a.p_ != b.p_)
            fail(ErrorKind::FieldMismatch, "mixing " + a.field().name() + " and " + b.field().name());
    }
    static Scalar raw(std::int64_t n, std::int64_t d) {
        Scalar s;
        s.num_ = n;
        s.den_ = d;
        return s;
    }
    static Scalar normalized(std::int64_t n, std::int64_t d) {
        if (n == 0) return Scalar(0);
        std::int64_t g = std::gcd(n, d);
        n /= g;
        d /= g;
        if (d < 0) {
            if (n == INT64_MIN || d == INT64_MIN) {
                mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
                q.canonicalize();
                return from_mpq(q);
            }
            n = -n;
            d = -d;
        }
        return raw(n, d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::uint64_t p_ = 0;
    std::shared_ptr<const mpq_class> big_;
};

} // namespace sphertwist
