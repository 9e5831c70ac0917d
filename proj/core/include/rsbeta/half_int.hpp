#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rsbeta {

/// A number in Z or Z+1/2, stored as twice its value so all arithmetic is
/// exact. Discrete parameters of the lattice identities (N_l, M_l, m_j and
/// the parity class nu) live here; sums and differences of two values with
/// equal parity are integers.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt of_int(std::int64_t n) { return HalfInt(2 * n); }
    static constexpr HalfInt of_twice(std::int64_t t) { return HalfInt(t); }

    constexpr std::int64_t twice() const { return t_; }
    constexpr bool is_integer() const { return (t_ & 1) == 0; }
    /// Parity class: 0 for Z, 1/2 for Z+1/2 (returned as twice-value 0 or 1).
    constexpr int parity() const { return static_cast<int>(t_ & 1 ? 1 : 0); }

    /// Exact integer value; throws when the value is a true half-integer.
    constexpr std::int64_t as_int() const {
        if (!is_integer()) throw std::domain_error("HalfInt: not an integer");
        return t_ / 2;
    }
    constexpr double as_double() const { return static_cast<double>(t_) / 2.0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.t_ + b.t_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.t_ - b.t_); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.t_); }
    friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return HalfInt(k * a.t_); }
    constexpr HalfInt& operator+=(HalfInt b) { t_ += b.t_; return *this; }
    constexpr HalfInt& operator-=(HalfInt b) { t_ -= b.t_; return *this; }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    constexpr HalfInt abs() const { return HalfInt(t_ < 0 ? -t_ : t_); }

    std::string str() const {
        if (is_integer()) return std::to_string(t_ / 2);
        return std::to_string(t_) + "/2";
    }

    /// Parses either a plain integer ("3", "-2") or a twice-value fraction
    /// ("1/2", "-5/2").
    static HalfInt parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return of_int(std::stoll(s));
        if (s.substr(slash + 1) != "2")
            throw std::invalid_argument("HalfInt: denominator must be 2 in '" + s + "'");
        return of_twice(std::stoll(s.substr(0, slash)));
    }

private:
    constexpr explicit HalfInt(std::int64_t t) : t_(t) {}
    std::int64_t t_ = 0;
};

/// Parity class nu in {0, 1/2}, carried as a HalfInt of value 0 or 1/2.
inline constexpr HalfInt nu_zero = HalfInt::of_twice(0);
inline constexpr HalfInt nu_half = HalfInt::of_twice(1);

/// An exact eighth root of unity e^{i pi q/4}, q mod 8. All sign and phase
/// factors of the identity catalog are quarter-integer powers of e^{i pi},
/// accumulated here in integer arithmetic and converted to a complex value
/// only at the end.
class Phase {
public:
    constexpr Phase() = default;
    /// e^{i pi k}  (sign factor (-1)^k)
    static constexpr Phase minus_one_pow(std::int64_t k) { return Phase(((4 * k) % 8 + 8) % 8); }
    /// e^{i pi q/4}
    static constexpr Phase quarter(std::int64_t q) { return Phase((q % 8 + 8) % 8); }
    /// e^{i pi h} for a HalfInt h (twice-value even or odd)
    static constexpr Phase pi_times(HalfInt h) { return quarter(2 * h.twice()); }

    constexpr Phase operator*(Phase o) const { return Phase((q_ + o.q_) % 8); }
    constexpr Phase& operator*=(Phase o) { q_ = (q_ + o.q_) % 8; return *this; }

    constexpr int q() const { return q_; }

    template <typename Complex>
    Complex value() const {
        constexpr double r = 0.70710678118654752440; // sqrt(1/2)
        switch (q_) {
            case 0: return Complex(1, 0);
            case 1: return Complex(r, r);
            case 2: return Complex(0, 1);
            case 3: return Complex(-r, r);
            case 4: return Complex(-1, 0);
            case 5: return Complex(-r, -r);
            case 6: return Complex(0, -1);
            default: return Complex(r, -r);
        }
    }

private:
    constexpr explicit Phase(std::int64_t q) : q_(static_cast<int>(q)) {}
    int q_ = 0;
};

} // namespace rsbeta
