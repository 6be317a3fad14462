#pragma once

#include <array>
#include <stdexcept>

namespace uavtc {

// Truncation orders and expansion point shared by all jets in one computation.
struct JetShape {
    int order1 = 0;
    int order2 = 0;
    double point1 = 0.0;
    double point2 = 0.0;

    bool operator==(const JetShape&) const = default;
};

class JetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bivariate truncated Taylor polynomial
//   sum_{i <= order1, j <= order2} c[i][j] (s1 - point1)^i (s2 - point2)^j,
// so c[i][j] is the (i, j) mixed partial divided by i! j!.
class Jet2 {
public:
    static constexpr int kMaxOrder = 7;
    static constexpr int kStride = kMaxOrder + 1;

    explicit Jet2(const JetShape& shape);

    static Jet2 constant(const JetShape& shape, double value);
    // s1 and s2 themselves: value point1 (resp. point2), unit first derivative.
    static Jet2 variable1(const JetShape& shape);
    static Jet2 variable2(const JetShape& shape);

    const JetShape& shape() const { return shape_; }
    int order1() const { return shape_.order1; }
    int order2() const { return shape_.order2; }

    double operator()(int i, int j) const { return c_[i * kStride + j]; }
    double& operator()(int i, int j) { return c_[i * kStride + j]; }
    double value() const { return c_[0]; }

    // Sum of every stored coefficient.
    double coefficient_sum() const;
    // Evaluate the polynomial at (s1, s2).
    double evaluate(double s1, double s2) const;
    bool all_finite() const;

    Jet2& operator+=(const Jet2& rhs);
    Jet2& operator-=(const Jet2& rhs);
    Jet2& operator*=(double k);
    Jet2& operator+=(double k);

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator*(double k, Jet2 a) { return a *= k; }
    friend Jet2 operator*(Jet2 a, double k) { return a *= k; }
    friend Jet2 operator+(Jet2 a, double k) { return a += k; }
    friend Jet2 operator+(double k, Jet2 a) { return a += k; }
    friend Jet2 operator-(double k, const Jet2& a);
    friend Jet2 operator-(const Jet2& a);
    friend Jet2 operator*(const Jet2& a, const Jet2& b);

    bool operator==(const Jet2&) const = default;

private:
    JetShape shape_;
    std::array<double, kStride * kStride> c_{};
};

// 1 / a, solved order by order from a * b = 1. Throws JetError if a(0,0) == 0.
Jet2 reciprocal(const Jet2& a);
// a^(-k) for k >= 1.
Jet2 pow_neg(const Jet2& a, int k);
// a^k for k >= 0 by repeated squaring.
Jet2 pow_int(const Jet2& a, int k);
// exp(a) from the recurrence e' = e a'.
Jet2 exp(const Jet2& a);

// Largest coefficient magnitude; the norm used by adaptive quadrature.
double quadrature_norm(const Jet2& a);
inline double leading_value(const Jet2& a) { return a.value(); }

} // namespace uavtc
