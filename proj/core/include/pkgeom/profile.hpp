#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace pkgeom {

/// Value of the profile function and its first three derivatives at one t.
struct ProfileValues {
    double f = 0.0;
    double df = 0.0;
    double d2f = 0.0;
    double d3f = 0.0;
};

enum class ProfileFamily { Linear, Quadratic, User };

/// The profile function f: [0,∞) → (-∞,0] parametrizing the metric family.
/// Axioms: f(0) = 0, f'(t) < 0 for all t ≥ 0, f(t) → -∞ as t → ∞.
///
/// Builtins: linear f(t) = -kt and quadratic f(t) = -kt - t², k > 0.
/// User profiles come from a plain-text table (columns t f f' f'' f''')
/// interpolated by monotone cubic Hermite splines, or from a callable.
class ProfileFunction {
  public:
    static ProfileFunction linear(double k);
    static ProfileFunction quadratic(double k);
    static ProfileFunction from_table(const std::string& path);
    static ProfileFunction from_samples(std::vector<double> t, std::vector<double> f,
                                        std::vector<double> df, std::vector<double> d2f,
                                        std::vector<double> d3f);
    static ProfileFunction from_callable(std::function<ProfileValues(double)> fn,
                                         std::string name);

    /// (f, f', f'', f''') at t; throws std::domain_error for t < 0.
    ProfileValues eval(double t) const;

    /// The t ≥ 0 with f(t) = s, for s ≤ 0.  Bracket doubling, bisection,
    /// Newton polish; |f(t)-s| ≤ 1e-12·(1+|s|).
    double inverse(double s) const;

    /// G_f = [f''(1-f) + (f')²]/(1-f)² - [f'''·f - (f'')²]/(f')².
    double g_factor(double t) const;

    ProfileFamily family() const { return family_; }
    double k() const { return k_; }
    const std::string& name() const { return name_; }

    /// Largest usable t (table end for user tables, +inf for builtins).
    double domain_max() const { return t_max_hint_; }

  private:
    ProfileFunction() = default;
    ProfileFamily family_ = ProfileFamily::User;
    double k_ = 0.0;
    std::string name_;
    std::function<ProfileValues(double)> fn_;
    double t_max_hint_ = std::numeric_limits<double>::infinity();
};

struct ProfileValidationReport {
    double f0_residual = 0.0;       // |f(0)|
    double max_df = 0.0;            // max of f' over the grid, must stay < 0
    double tail_value = 0.0;        // f at the largest grid point
    double max_rel_mismatch_df = 0.0;
    double max_rel_mismatch_d2f = 0.0;
    double max_rel_mismatch_d3f = 0.0;
    bool axioms_ok = false;
    bool derivatives_ok = false;
    bool pass = false;
    std::string detail;  // first failure, empty when passing
};

/// Checks the axioms and the consistency of the supplied derivatives
/// against central finite differences of f (relative tolerance 1e-6).
ProfileValidationReport validate(const ProfileFunction& profile, std::span<const double> grid);

/// Geometric grid {0, 1e-2, ..., 1e4} used by default for validation.
std::vector<double> default_validation_grid();

}  // namespace pkgeom
