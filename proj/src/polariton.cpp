#include "hyperpol/polariton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperpol/errors.hpp"

namespace hyperpol {

std::string_view to_string(CouplingRegime r) {
    return r == CouplingRegime::strong ? "strong" : "weak";
}

double vacuum_decay_rate(double omega, const PhysicalConstants& k) {
    if (!(omega >= 0.0)) throw InvalidInput("vacuum_decay_rate: omega must be >= 0");
    return omega * omega * k.e * k.e / (12.0 * pi * k.eps0 * k.m * k.c * k.c * k.c);
}

double coupling_from_strength(double chi, double omega_0, const PhysicalConstants& k) {
    if (chi < 0.0) throw InvalidInput("coupling_from_strength: chi must be >= 0");
    if (!(omega_0 > 0.0)) throw InvalidInput("coupling_from_strength: omega_0 must be > 0");
    return std::sqrt(k.e * k.e * omega_0 * chi / (2.0 * k.m * k.c * k.c * k.eps0));
}

CouplingRegime classify_coupling(double g, double gamma_vac, double kappa_c) {
    if (g < 0.0 || gamma_vac < 0.0 || kappa_c < 0.0)
        throw InvalidInput("classify_coupling: rates must be nonnegative");
    return 2.0 * g > std::max(kappa_c, gamma_vac) ? CouplingRegime::strong
                                                  : CouplingRegime::weak;
}

double coupling_margin(double g, double gamma_vac, double kappa_c) {
    return 2.0 * g / std::max(kappa_c, gamma_vac);
}

CoupledModeResult coupled_eigenfrequencies(const AtomModel& atom, const SurfaceResonance& res,
                                           double g, const PhysicalConstants& k) {
    const double gam = atom.gamma_vac;
    const double kap = res.kappa_c;
    // Principal sqrt: nonnegative radicand gives a real shift (+-g-like),
    // negative radicand gives +i |.|^(1/2), which reproduces the decoupled
    // pair at g = 0.
    const cplx rad = std::sqrt(cplx(g * g - 0.25 * (gam - kap) * (gam - kap), 0.0));
    const cplx base = cplx(atom.omega_0, -0.5 * (gam + kap));
    const cplx plus = base + rad;
    const cplx minus = base - rad;
    const double splitting = k.hbar * (plus.real() - minus.real()) / k.e * 1e3;
    return {plus, minus, g, classify_coupling(g, gam, kap), splitting};
}

std::pair<double, double> rabi_estimate(double omega_c, double omega_p) {
    if (omega_p < 0.0) throw InvalidInput("rabi_estimate: omega_p must be >= 0");
    return {omega_c + 0.5 * omega_p, omega_c - 0.5 * omega_p};
}

double rabi_splitting_meV(double omega_p, const PhysicalConstants& k) {
    return k.hbar * omega_p / k.e * 1e3;
}

cplx azz(const AtomModel& atom, const SurfaceResonance& res, double coupling_prefactor,
         cplx w) {
    const cplx q(res.omega_c, -res.kappa_c);
    return atom.omega_0 * atom.omega_0 - w * w - cplx(0.0, 2.0 * atom.gamma_vac) * w +
           coupling_prefactor * w * w / (w - q);
}

RootWindow default_root_window(const AtomModel& atom, const SurfaceResonance& res) {
    return {0.5 * atom.omega_0, 1.5 * atom.omega_0,
            -10.0 * (atom.gamma_vac + res.kappa_c), 0.0};
}

namespace {

// Pole-cleared dispersion polynomial F(w) = A_zz(w) (w - q) for K != 0:
//   F = -w^3 + (q - 2 i gamma + K) w^2 + (omega_0^2 + 2 i gamma q) w - omega_0^2 q.
// All three roots are genuine A_zz roots (F(q) = K q^2 != 0). For K = 0 the
// entire quadratic A_zz itself is used instead — the cubic would pick up a
// spurious root at the pole.
struct Poly {
    std::array<cplx, 4> c;  // c[k] multiplies w^k
    int degree;

    cplx operator()(cplx w) const {
        cplx acc = c[degree];
        for (int k = degree - 1; k >= 0; --k) acc = acc * w + c[k];
        return acc;
    }
    cplx deriv(cplx w) const {
        cplx acc = static_cast<double>(degree) * c[degree];
        for (int k = degree - 1; k >= 1; --k) acc = acc * w + static_cast<double>(k) * c[k];
        return acc;
    }
};

Poly dispersion_poly(const AtomModel& atom, const SurfaceResonance& res, double K) {
    const double w0 = atom.omega_0;
    const double gam = atom.gamma_vac;
    const cplx q(res.omega_c, -res.kappa_c);
    if (K == 0.0)
        return {{cplx(w0 * w0), cplx(0.0, -2.0 * gam), cplx(-1.0), cplx(0.0)}, 2};
    return {{-w0 * w0 * q, w0 * w0 + cplx(0.0, 2.0 * gam) * q, q + cplx(0.0, -2.0 * gam) + K,
             cplx(-1.0)},
            3};
}

struct Rect {
    double re_min, re_max, im_min, im_max;

    cplx corner(int k) const {
        switch (k & 3) {
            case 0: return {re_min, im_min};
            case 1: return {re_max, im_min};
            case 2: return {re_max, im_max};
            default: return {re_min, im_max};
        }
    }
};

double eval_cubic(double b3, double b2, double b1, double b0, double t) {
    return ((b3 * t + b2) * t + b1) * t + b0;
}

void push_bracket_root(double b3, double b2, double b1, double b0, double lo, double hi,
                       std::vector<double>& out) {
    double flo = eval_cubic(b3, b2, b1, b0, lo);
    double fhi = eval_cubic(b3, b2, b1, b0, hi);
    if (flo == 0.0) {
        out.push_back(lo);
        return;
    }
    if (fhi == 0.0) {
        out.push_back(hi);
        return;
    }
    if ((flo < 0.0) == (fhi < 0.0)) return;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_cubic(b3, b2, b1, b0, mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    out.push_back(0.5 * (lo + hi));
}

// Real roots of b3 t^3 + b2 t^2 + b1 t + b0 inside [0, 1]: the polynomial is
// monotone between its critical points, so bracketing over the breakpoint
// list is exhaustive.
void real_roots_unit(double b3, double b2, double b1, double b0, std::vector<double>& out) {
    const double m = std::max({std::abs(b3), std::abs(b2), std::abs(b1), std::abs(b0)});
    if (m == 0.0) return;
    b3 /= m;
    b2 /= m;
    b1 /= m;
    b0 /= m;
    std::vector<double> bp{0.0, 1.0};
    if (std::abs(b3) > 1e-14) {
        const double disc = 4.0 * b2 * b2 - 12.0 * b3 * b1;
        if (disc > 0.0) {
            const double s = std::sqrt(disc);
            for (double t : {(-2.0 * b2 + s) / (6.0 * b3), (-2.0 * b2 - s) / (6.0 * b3)})
                if (t > 0.0 && t < 1.0) bp.push_back(t);
        }
    } else if (std::abs(b2) > 1e-14) {
        const double t = -b1 / (2.0 * b2);
        if (t > 0.0 && t < 1.0) bp.push_back(t);
    }
    std::sort(bp.begin(), bp.end());
    for (std::size_t i = 0; i + 1 < bp.size(); ++i)
        push_bracket_root(b3, b2, b1, b0, bp[i], bp[i + 1], out);
}

// Winding number of F along the rectangle boundary. Restricted to one edge,
// F is a polynomial in the edge parameter t; cutting [0, 1] at the zeros of
// Im F confines each piece to a closed half-plane, where the phase change is
// the principal arg difference (split once more at the piece midpoint so the
// +-pi endpoint ambiguity cannot occur). Endpoint-only phase tracking is not
// enough here: a root lying close to a long edge swings the phase by a full
// turn that is invisible from the endpoints. Returns -1 when F gets
// vanishingly small on the contour.
int winding_count(const Poly& F, const Rect& rect, double scale) {
    const double tiny = 1e-13 * scale;
    double total = 0.0;
    for (int edge = 0; edge < 4; ++edge) {
        const cplx za = rect.corner(edge);
        const cplx zb = rect.corner(edge + 1);
        const cplx d = zb - za;
        // Coefficients of F(za + t d) as a polynomial in t.
        const cplx c2 = F.c[2];
        const cplx c3 = F.degree >= 3 ? F.c[3] : cplx(0.0);
        const std::array<cplx, 4> e = {F(za),
                                       d * (F.c[1] + 2.0 * c2 * za + 3.0 * c3 * za * za),
                                       d * d * (c2 + 3.0 * c3 * za), d * d * d * c3};
        std::vector<double> cuts;
        const double im_scale = std::max({std::abs(e[3].imag()), std::abs(e[2].imag()),
                                          std::abs(e[1].imag()), std::abs(e[0].imag())});
        if (im_scale == 0.0) {
            // F is real along the edge; any interior zero of the real part
            // is a zero on the contour.
            real_roots_unit(e[3].real(), e[2].real(), e[1].real(), e[0].real(), cuts);
            if (!cuts.empty()) return -1;
            if (std::abs(e[0]) < tiny || std::abs(F(zb)) < tiny) return -1;
            continue;  // confined to one real ray: no phase change
        }
        real_roots_unit(e[3].imag(), e[2].imag(), e[1].imag(), e[0].imag(), cuts);
        cuts.push_back(1.0);
        std::sort(cuts.begin(), cuts.end());
        cplx fa = e[0];
        if (std::abs(fa) < tiny) return -1;
        double ta = 0.0;
        for (const double tb : cuts) {
            if (!(tb > ta)) continue;
            const cplx fm = F(za + d * (0.5 * (ta + tb)));
            const cplx fb = F(za + d * tb);
            if (std::abs(fm) < tiny || std::abs(fb) < tiny) return -1;
            total += std::arg(fm / fa) + std::arg(fb / fm);
            ta = tb;
            fa = fb;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

void collect_roots(const Poly& F, Rect rect, double scale, int count, int depth,
                   std::vector<cplx>& out) {
    if (count <= 0) return;
    const double diam = std::max(rect.re_max - rect.re_min, rect.im_max - rect.im_min);
    // Keep shrinking single-root cells so the Newton seed starts near its
    // root instead of at the centre of a window-sized cell.
    if ((count == 1 && diam < 1e-6 * scale) || depth >= 40 || diam < 1e-12 * scale) {
        // Newton from the cell centre; multiple roots this close are polished
        // from the same seed and deduplicated by the caller.
        cplx w(0.5 * (rect.re_min + rect.re_max), 0.5 * (rect.im_min + rect.im_max));
        for (int it = 0; it < 200; ++it) {
            const cplx f = F(w);
            const cplx df = F.deriv(w);
            if (df == cplx(0.0)) break;
            const cplx step = f / df;
            w -= step;
            if (std::abs(step) < 1e-16 * scale) break;
        }
        out.push_back(w);
        return;
    }
    const double rm = 0.5 * (rect.re_min + rect.re_max);
    const double im = 0.5 * (rect.im_min + rect.im_max);
    const Rect quads[4] = {{rect.re_min, rm, rect.im_min, im},
                           {rm, rect.re_max, rect.im_min, im},
                           {rect.re_min, rm, im, rect.im_max},
                           {rm, rect.re_max, im, rect.im_max}};
    int assigned = 0;
    for (int k = 0; k < 4; ++k) {
        Rect quad = quads[k];
        int c = winding_count(F, quad, scale);
        // A root sitting on a split line: nudge the sub-rectangle.
        for (int jiggle = 0; c < 0 && jiggle < 8; ++jiggle) {
            const double eps = (1e-9 * (jiggle + 1)) * scale;
            quad = {quad.re_min - eps, quad.re_max + eps, quad.im_min - eps,
                    quad.im_max + eps};
            c = winding_count(F, quad, scale);
        }
        if (c < 0) c = 0;
        c = std::min(c, count - assigned);
        collect_roots(F, quad, scale, c, depth + 1, out);
        assigned += c;
    }
    // Jiggled sub-rectangles overlap slightly; duplicates are removed later.
}

}  // namespace

std::vector<cplx> solve_azz_roots(const AtomModel& atom, const SurfaceResonance& res,
                                  double coupling_prefactor) {
    return solve_azz_roots(atom, res, coupling_prefactor, default_root_window(atom, res));
}

std::vector<cplx> solve_azz_roots(const AtomModel& atom, const SurfaceResonance& res,
                                  double coupling_prefactor, const RootWindow& window) {
    if (!(atom.omega_0 > 0.0)) throw InvalidInput("solve_azz_roots: omega_0 must be > 0");
    const double w0 = atom.omega_0;
    const double scale = w0;
    const Poly F = dispersion_poly(atom, res, coupling_prefactor);

    // Inflate so roots on the window boundary (e.g. the real axis at zero
    // damping) are counted.
    const double delta = 1e-6 * scale;
    Rect rect{window.re_min - delta, window.re_max + delta, window.im_min - delta,
              window.im_max + delta};

    double poly_scale = std::pow(scale, F.degree);
    int count = winding_count(F, rect, poly_scale);
    for (int jiggle = 0; count < 0 && jiggle < 8; ++jiggle) {
        const double eps = (1e-8 * (jiggle + 1)) * scale;
        rect = {rect.re_min - eps, rect.re_max + eps, rect.im_min - eps, rect.im_max + eps};
        count = winding_count(F, rect, poly_scale);
    }
    std::ostringstream rect_str;
    rect_str << "Re [" << rect.re_min << ", " << rect.re_max << "], Im [" << rect.im_min
             << ", " << rect.im_max << "]";
    if (count < 0)
        throw NumericError("solve_azz_roots: dispersion function vanishes on the search "
                           "rectangle boundary " +
                           rect_str.str());

    std::vector<cplx> polished;
    collect_roots(F, rect, scale, count, 0, polished);

    // Deduplicate (jiggled cells can return the same root twice).
    std::vector<cplx> unique;
    for (const cplx& w : polished) {
        bool dup = false;
        for (const cplx& u : unique)
            if (std::abs(w - u) < 1e-9 * scale) dup = true;
        if (!dup) unique.push_back(w);
    }
    if (static_cast<int>(unique.size()) != count)
        throw NumericError("solve_azz_roots: argument principle counted " +
                           std::to_string(count) + " roots but polishing found " +
                           std::to_string(unique.size()) + " in " + rect_str.str());

    // |A_zz| < 1e-8 omega_0^2 at every reported root, with a floor at the
    // rounding noise of the pole-cleared polynomial: a root within O(K) of
    // the pole has |A_zz'| ~ K q^2 / (w - q)^2, so large that no
    // representable w can meet an absolute residual bound. Such a root is
    // accepted when |F(w)| is at the coefficient noise level, i.e. w is an
    // exact root of a relatively perturbed polynomial.
    const double mach = std::numeric_limits<double>::epsilon();
    std::vector<cplx> roots;
    for (const cplx& w : unique) {
        if (!(w.real() > 0.0) || w.imag() > delta) continue;
        double coeff_noise = 0.0;
        double pw = 1.0;
        for (int k = 0; k <= F.degree; ++k) {
            coeff_noise += std::abs(F.c[k]) * pw;
            pw *= std::abs(w);
        }
        const bool poly_exact = std::abs(F(w)) <= 64.0 * mach * coeff_noise;
        if (!poly_exact && std::abs(azz(atom, res, coupling_prefactor, w)) > 1e-8 * w0 * w0)
            throw NumericError("solve_azz_roots: root failed the |A_zz| tolerance in " +
                               rect_str.str());
        roots.push_back(w);
    }
    std::sort(roots.begin(), roots.end(),
              [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
    return roots;
}

PoleFit fit_surface_resonance(const std::vector<std::pair<double, cplx>>& samples) {
    if (samples.size() < 8)
        throw InvalidInput("fit_surface_resonance: need >= 8 samples, got " +
                           std::to_string(samples.size()));

    double wmin = samples.front().first, wmax = samples.front().first, wsum = 0.0;
    for (const auto& [w, r] : samples) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
        wsum += w;
    }
    const double wm = wsum / static_cast<double>(samples.size());
    const double ws = wmax - wmin;
    if (!(ws > 0.0))
        throw NumericError("fit_surface_resonance: samples do not span a frequency range");

    // Clear the pole: r (x - p~) = a (x - p~) + b~  =>  r x = a x + beta + p~ r
    // in the scaled variable x = (w - wm)/ws. Linear least squares in
    // u = (a, beta, p~) via the normal equations.
    cplx ata[3][3] = {};
    cplx aty[3] = {};
    for (const auto& [w, r] : samples) {
        const cplx x((w - wm) / ws, 0.0);
        const cplx row[3] = {x, cplx(1.0), r};
        const cplx y = r * x;
        for (int i = 0; i < 3; ++i) {
            aty[i] += std::conj(row[i]) * y;
            for (int j = 0; j < 3; ++j) ata[i][j] += std::conj(row[i]) * row[j];
        }
    }

    // 3x3 Gaussian elimination with partial pivoting.
    double norm = 0.0;
    for (auto& row : ata)
        for (auto& v : row) norm = std::max(norm, std::abs(v));
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int rw = col + 1; rw < 3; ++rw)
            if (std::abs(ata[perm[rw]][col]) > std::abs(ata[perm[piv]][col])) piv = rw;
        std::swap(perm[col], perm[piv]);
        const cplx diag = ata[perm[col]][col];
        if (std::abs(diag) < 1e-12 * norm)
            throw NumericError(
                "fit_surface_resonance: singular system (no resonant pole in the data?)");
        for (int rw = col + 1; rw < 3; ++rw) {
            const cplx fac = ata[perm[rw]][col] / diag;
            for (int cc = col; cc < 3; ++cc) ata[perm[rw]][cc] -= fac * ata[perm[col]][cc];
            aty[perm[rw]] -= fac * aty[perm[col]];
        }
    }
    cplx u[3];
    for (int rw = 2; rw >= 0; --rw) {
        cplx acc = aty[perm[rw]];
        for (int cc = rw + 1; cc < 3; ++cc) acc -= ata[perm[rw]][cc] * u[cc];
        u[rw] = acc / ata[perm[rw]][rw];
    }

    const cplx a = u[0];
    const cplx p = wm + ws * u[2];          // pole omega_c - i kappa_c
    const cplx b = ws * (u[1] + u[0] * u[2]);  // residue, unscaled

    double num = 0.0, den = 0.0;
    for (const auto& [w, r] : samples) {
        num += std::norm(a + b / (cplx(w) - p) - r);
        den += std::norm(r);
    }
    const double residual = std::sqrt(num / den);

    const double kappa_c = -p.imag();
    if (!(kappa_c > 0.0))
        throw NumericError("fit_surface_resonance: fitted pole not in the lower half-plane "
                           "(kappa_c <= 0)");
    if (residual > 0.1) {
        std::ostringstream os;
        os << "fit_surface_resonance: residual " << residual << " exceeds 0.1";
        throw NumericError(os.str());
    }
    return {{p.real(), kappa_c, std::abs(b)}, a, b, residual};
}

}  // namespace hyperpol
