#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "skdv/errors.hpp"
#include "skdv/fft.hpp"

namespace skdv {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Uniform periodic grid on [-L/2, L/2) with the two-sided DFT frequency set.
class Grid1D {
public:
    int n_points() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    /// Frequency spacing 2 pi / L.
    double dxi() const { return 2.0 * kPi / length_; }
    /// Modulus of the Nyquist frequency, pi n / L.
    double kmax() const { return kPi * n_ / length_; }
    int nyquist_index() const { return n_ / 2; }
    double x(int j) const { return -0.5 * length_ + j * dx(); }
    double xi(int k) const { return xi_[static_cast<size_t>(k)]; }
    const std::vector<double>& frequencies() const { return xi_; }
    std::vector<double> coordinates() const;

private:
    friend std::shared_ptr<const Grid1D> make_grid(int n_points, double length);
    Grid1D(int n, double length);
    int n_;
    double length_;
    std::vector<double> xi_;
};

using GridPtr = std::shared_ptr<const Grid1D>;

/// Builds a grid; odd, zero or negative sizes and non-positive lengths are rejected.
GridPtr make_grid(int n_points, double length);

enum class FieldTag { complex, real };

/// Grid samples of a complex or real function.  Value semantics; the grid is shared.
struct Field {
    GridPtr grid;
    CVec values;
    FieldTag tag = FieldTag::complex;

    Field() = default;
    Field(GridPtr g, CVec v, FieldTag t = FieldTag::complex);

    static Field zeros(GridPtr g, FieldTag t = FieldTag::complex);
    static Field from_function(GridPtr g, const std::function<cplx(double)>& f,
                               FieldTag t = FieldTag::complex);
    static Field from_real(GridPtr g, const std::vector<double>& v);

    int size() const { return static_cast<int>(values.size()); }
    bool is_real() const { return tag == FieldTag::real; }
    std::vector<double> real_part() const;
    double max_abs() const;
    /// Zeroes the imaginary parts and tags the field real.
    Field& make_real();
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field operator*(cplx s, const Field& a);
/// Pointwise product.
Field pointwise(const Field& a, const Field& b);

/// Throws NanError if any sample is not finite.
void require_finite(const Field& f, const char* where);

/// Continuous-convention transform samples f^(xi_k) = dx * DFT(f)_k.
CVec spectrum(const Field& f);
/// Inverse of spectrum().
Field from_spectrum(const GridPtr& g, const CVec& fhat, FieldTag t = FieldTag::complex);

/// Multiplies the spectrum by m_k.  When keeps_real is set and f is real the
/// result is tagged real and its imaginary parts are dropped.
Field apply_multiplier(const Field& f, const CVec& m, bool keeps_real);
Field apply_multiplier(const Field& f, const std::vector<double>& m, bool keeps_real);

/// D^s f, multiplier |xi|^s.
Field fractional_derivative(const Field& f, double s);
/// J^s f, multiplier (1 + xi^2)^{s/2}; s may be negative.
Field bessel_potential(const Field& f, double s);
/// d^order f / dx^order; odd orders drop the Nyquist mode.
Field derivative(const Field& f, int order = 1);

enum class MixOrder { x_then_t, t_then_x };

struct NormSpec {
    enum class Kind { sobolev, homogeneous, weighted_bracket, weighted_abs, mixed };
    Kind kind = Kind::sobolev;
    double s = 0.0;
    double r = 0.0;
    double p = 2.0;
    double q = 2.0;
    MixOrder order = MixOrder::x_then_t;

    static NormSpec sobolev(double s);
    static NormSpec homogeneous(double s);
    static NormSpec weighted_bracket(double r);
    static NormSpec weighted_abs(double r);
    static NormSpec mixed(double p, double q, MixOrder order);
};

/// Slices of one grid at strictly increasing times.
struct SpaceTimeField {
    GridPtr grid;
    std::vector<double> times;
    std::vector<Field> slices;

    void validate() const;
};

double norm(const Field& f, const NormSpec& spec);
double norm(const SpaceTimeField& f, const NormSpec& spec);

/// (sum |f_j|^p dx)^{1/p}; p = inf gives the grid maximum.
double lp_norm(const Field& f, double p);

/// Composite trapezoid weights for the given abscissae.
std::vector<double> trapezoid_weights(const std::vector<double>& t);

/// Mixed Lebesgue norm of a space-time field; x_then_t is ||(||F||_{L^q_T})||_{L^p_x}.
double mixed_norm(const SpaceTimeField& F, double p, double q, MixOrder order);

/// max |f| over the outer margin_fraction * L on each side, divided by max |f|.
double boundary_contamination(const Field& f, double margin_fraction);

}  // namespace skdv
