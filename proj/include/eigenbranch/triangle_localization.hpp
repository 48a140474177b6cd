#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eigenbranch {

/// Coefficients of the two quintics P_A, P_B (index = power of zeta).
struct TrianglePolynomials {
    std::array<double, 6> A;
    std::array<double, 6> B;
};

// Evaluated from their closed forms in pi.
const TrianglePolynomials& triangle_polynomials();

double pa(double zeta);
double pb(double zeta);

/// Root of P_A in (0, 1) by bisection.
double zeta0(double tol = 1e-14);

/// b^5 / (720 pi^2 a) (kappa^2 P_A - P_B), kappa = a / b. Positive values
/// certify that the first eigenvalue lies below pi^2/b^2.
double q_value(double zeta, double a, double b);

/// zeta > zeta0 and a^2/b^2 > P_B/P_A, with zeta = d/b - 1.
bool localized_predicate(double a, double b, double d);

/// sqrt(P_B) / (sqrt(P_A) zeta), decreasing on (zeta0, inf).
double f(double zeta);
double f_inverse(double r, double tol = 1e-13);

struct Rectangle {
    double a;
    double b;
};
// Rectangle [0,a]x[0,b] inscribed in the right triangle with legs c (x) and d (y).
Rectangle inscribed_rectangle(double c, double d, double zeta);

struct DiagramRow {
    double kappa;
    std::vector<bool> localized;          // per zeta sample
    std::optional<std::pair<double, double>> interval;  // sampled endpoints of the positive set
    bool contiguous = true;
};

struct Diagram {
    std::vector<double> zeta;
    std::vector<DiagramRow> rows;
};

Diagram diagram(double zeta_min, double zeta_max, double kappa_min, double kappa_max, int n_zeta, int n_kappa);

/// The set {zeta > zeta0 : kappa^2 P_A > P_B} as an open interval, or nullopt
/// when empty. P_B/P_A is unimodal on (zeta0, inf): +inf at zeta0, a single
/// minimum, then rising to B5/A5; the upper end is +inf when kappa^2 > B5/A5.
std::optional<std::pair<double, double>> localization_interval(double kappa);

// Minimiser of P_B/P_A; kappa must exceed sqrt of the minimum to localize at all.
double min_ratio_zeta();

void write_diagram_csv(std::ostream& os, const Diagram& d);
std::string diagram_to_json(const Diagram& d);

}  // namespace eigenbranch
