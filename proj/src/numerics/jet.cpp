#include "uavtc/numerics/jet.hpp"

#include <algorithm>
#include <cmath>

namespace uavtc {

namespace {

void require_same_shape(const Jet2& a, const Jet2& b)
{
    if (!(a.shape() == b.shape())) throw JetError("jet shapes or expansion points differ");
}

} // namespace

Jet2::Jet2(const JetShape& shape) : shape_(shape)
{
    if (shape.order1 < 0 || shape.order2 < 0 || shape.order1 > kMaxOrder || shape.order2 > kMaxOrder)
        throw JetError("jet order out of range 0..7");
}

Jet2 Jet2::constant(const JetShape& shape, double value)
{
    Jet2 j(shape);
    j(0, 0) = value;
    return j;
}

Jet2 Jet2::variable1(const JetShape& shape)
{
    Jet2 j = constant(shape, shape.point1);
    if (shape.order1 >= 1) j(1, 0) = 1.0;
    return j;
}

Jet2 Jet2::variable2(const JetShape& shape)
{
    Jet2 j = constant(shape, shape.point2);
    if (shape.order2 >= 1) j(0, 1) = 1.0;
    return j;
}

double Jet2::coefficient_sum() const
{
    double s = 0.0;
    for (int i = 0; i <= order1(); ++i)
        for (int j = 0; j <= order2(); ++j) s += (*this)(i, j);
    return s;
}

double Jet2::evaluate(double s1, double s2) const
{
    const double d1 = s1 - shape_.point1;
    const double d2 = s2 - shape_.point2;
    double total = 0.0;
    for (int i = order1(); i >= 0; --i) {
        double row = 0.0;
        for (int j = order2(); j >= 0; --j) row = row * d2 + (*this)(i, j);
        total = total * d1 + row;
    }
    return total;
}

bool Jet2::all_finite() const
{
    for (int i = 0; i <= order1(); ++i)
        for (int j = 0; j <= order2(); ++j)
            if (!std::isfinite((*this)(i, j))) return false;
    return true;
}

Jet2& Jet2::operator+=(const Jet2& rhs)
{
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs)
{
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

Jet2& Jet2::operator*=(double k)
{
    for (double& x : c_) x *= k;
    return *this;
}

Jet2& Jet2::operator+=(double k)
{
    c_[0] += k;
    return *this;
}

Jet2 operator-(double k, const Jet2& a)
{
    Jet2 r = -a;
    r(0, 0) += k;
    return r;
}

Jet2 operator-(const Jet2& a)
{
    Jet2 r = a;
    r *= -1.0;
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b)
{
    require_same_shape(a, b);
    const int n1 = a.order1();
    const int n2 = a.order2();
    Jet2 r(a.shape());
    for (int p = 0; p <= n1; ++p) {
        for (int q = 0; q <= n2; ++q) {
            const double apq = a(p, q);
            if (apq == 0.0) continue;
            for (int i = 0; i + p <= n1; ++i)
                for (int j = 0; j + q <= n2; ++j) r(i + p, j + q) += apq * b(i, j);
        }
    }
    return r;
}

Jet2 reciprocal(const Jet2& a)
{
    const double a00 = a(0, 0);
    if (a00 == 0.0) throw JetError("singular jet: zero constant term");
    const int n1 = a.order1();
    const int n2 = a.order2();
    Jet2 b(a.shape());
    // (a * b)(i, j) = delta(i, j); every b term on the right has a smaller index.
    for (int i = 0; i <= n1; ++i) {
        for (int j = 0; j <= n2; ++j) {
            double acc = (i == 0 && j == 0) ? 1.0 : 0.0;
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q)
                    if (p != 0 || q != 0) acc -= a(p, q) * b(i - p, j - q);
            b(i, j) = acc / a00;
        }
    }
    return b;
}

Jet2 pow_int(const Jet2& a, int k)
{
    if (k < 0) throw JetError("pow_int: negative exponent");
    Jet2 result = Jet2::constant(a.shape(), 1.0);
    Jet2 base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Jet2 pow_neg(const Jet2& a, int k)
{
    if (k < 1) throw JetError("pow_neg: exponent must be >= 1");
    return pow_int(reciprocal(a), k);
}

Jet2 exp(const Jet2& a)
{
    const int n1 = a.order1();
    const int n2 = a.order2();
    Jet2 e(a.shape());
    e(0, 0) = std::exp(a(0, 0));
    // Row 0 from d/ds2: j e[0][j] = sum_q q a[0][q] e[0][j-q].
    for (int j = 1; j <= n2; ++j) {
        double acc = 0.0;
        for (int q = 1; q <= j; ++q) acc += q * a(0, q) * e(0, j - q);
        e(0, j) = acc / j;
    }
    // Remaining rows from d/ds1: i e[i][j] = sum_{p>=1,q} p a[p][q] e[i-p][j-q].
    for (int i = 1; i <= n1; ++i) {
        for (int j = 0; j <= n2; ++j) {
            double acc = 0.0;
            for (int p = 1; p <= i; ++p)
                for (int q = 0; q <= j; ++q) acc += p * a(p, q) * e(i - p, j - q);
            e(i, j) = acc / i;
        }
    }
    return e;
}

double quadrature_norm(const Jet2& a)
{
    double m = 0.0;
    for (int i = 0; i <= a.order1(); ++i)
        for (int j = 0; j <= a.order2(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

} // namespace uavtc
