#include "conekit/liouville.hpp"
#include "conekit/sphere_quadrature.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;

// Lagrange weights for nodes 0..m-1 at position t (in units of the spacing).
template <int M>
std::array<double, M> lagrange(double t) {
    std::array<double, M> w{};
    for (int a = 0; a < M; ++a) {
        double v = 1.0;
        for (int b = 0; b < M; ++b)
            if (b != a) v *= (t - b) / static_cast<double>(a - b);
        w[static_cast<std::size_t>(a)] = v;
    }
    return w;
}

int clamp_origin(int i0, int count, int m) { return std::clamp(i0, 0, count - m); }

double wrap_angle(double th) {
    th = std::fmod(th, 2.0 * kPi);
    return th < 0 ? th + 2.0 * kPi : th;
}

// Position of a point in the owner chart of a patch, relative to its center.
std::optional<cdouble> patch_offset(const ChartAtlas& atlas, const PolarPatch& P, const SamplePoint& p) {
    if (p.chart == P.chart && p.puncture == P.puncture) return p.delta;
    auto q = atlas.to_chart(p, P.chart);
    if (!q) return std::nullopt;
    if (q->puncture == P.puncture) return q->delta;
    return q->z - P.center;
}

std::optional<cdouble> chart_position(const ChartAtlas& atlas, const SamplePoint& p, Chart c) {
    auto q = atlas.to_chart(p, c);
    if (!q) return std::nullopt;
    return q->z;
}

// A Cartesian stencil of M x M nodes is usable if every node carries an unknown.
template <int M>
bool cartesian_stencil(const CartesianGrid& G, cdouble z, int& i0, int& j0, double& tx, double& ty) {
    const double fx = (z.real() + G.L) / G.h;
    const double fy = (z.imag() + G.L) / G.h;
    if (fx < 0 || fy < 0 || fx > G.n - 1 || fy > G.n - 1) return false;
    i0 = clamp_origin(static_cast<int>(std::floor(fx)) - (M / 2 - 1), G.n, M);
    j0 = clamp_origin(static_cast<int>(std::floor(fy)) - (M / 2 - 1), G.n, M);
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b)
            if (G.kind[G.at(i0 + a, j0 + b)] == 0) return false;
    tx = fx - i0;
    ty = fy - j0;
    return true;
}

// Depth of z inside the box, in cells.
double box_depth(const CartesianGrid& G, cdouble z) {
    return (G.L - std::max(std::abs(z.real()), std::abs(z.imag()))) / G.h;
}

struct Term {
    int col;
    double w;
};

struct Constraint {
    int row;
    std::vector<Term> terms;
    double offset;
};

class Assembler {
public:
    Assembler(GridSolution& sol, const SolverOptions& opt) : S(sol), opt(opt) {}

    void build_geometry();
    void number_unknowns();
    void build_constraints();
    void precompute_sources();
    void initial_guess();
    bool newton(std::vector<double> beta_scale_dummy = {});
    void scatter(const Eigen::VectorXd& U);
    Eigen::VectorXd gather() const;

    GridSolution& S;
    SolverOptions opt;
    std::array<std::vector<int>, 2> cart_col;
    std::vector<int> patch_base;
    int nunk = 0;
    std::vector<Constraint> fringe;
    std::array<std::vector<double>, 2> cart_F;
    std::vector<std::vector<double>> patch_F;  // rows -1..ns-1 (index + 1)
    bool bordered = false;
    int border_col = -1;
    std::vector<double> border_b;
    double mu = 0.0;

    int ci(Chart c) const { return c == Chart::xi ? 0 : 1; }
    void evaluate(const Eigen::VectorXd& U, double mu_val, Eigen::VectorXd& R, std::vector<Eigen::Triplet<double>>* J);
    std::string describe(int col) const;
};

std::string Assembler::describe(int col) const {
    char buf[160];
    for (int c = 0; c < 2; ++c) {
        const auto& G = S.charts[static_cast<std::size_t>(c)];
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j)
                if (cart_col[static_cast<std::size_t>(c)][G.at(i, j)] == col) {
                    std::snprintf(buf, sizeof buf, "%s node (%.3f, %.3f) kind %d", c == 0 ? "xi" : "eta", G.x(i), G.x(j),
                                  G.kind[G.at(i, j)]);
                    return buf;
                }
    }
    for (std::size_t k = 0; k < S.patches.size(); ++k) {
        const auto& P = S.patches[k];
        const int off = col - patch_base[k];
        if (off >= 0 && off < P.ns * P.nt) {
            std::snprintf(buf, sizeof buf, "patch %zu row %d/%d theta %d", k, off / P.nt, P.ns, off % P.nt);
            return buf;
        }
    }
    return "border";
}

void Assembler::build_geometry() {
    const auto& atlas = S.atlas;
    const auto& cfg = S.config;
    for (Chart c : {Chart::xi, Chart::eta}) {
        auto& G = S.charts[ci(c)];
        G.chart = c;
        G.n = opt.grid;
        G.L = opt.half_width;
        G.h = 2.0 * G.L / (G.n - 1);
        G.u.assign(static_cast<std::size_t>(G.n) * G.n, 0.0);
        G.kind.assign(G.u.size(), 0);
    }
    const double hc = S.charts[0].h;
    const double hp = 2.0 * kPi / opt.patch_theta;
    S.patches.clear();
    for (std::size_t k = 0; k < cfg.size(); ++k) {
        const int idx = static_cast<int>(k);
        PolarPatch P;
        P.puncture = idx;
        P.chart = atlas.owner(idx);
        P.center = atlas.owner_position(idx);
        P.beta = atlas.beta(idx);
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& q : atlas.punctures(P.chart))
            if (q.index != idx) dist = std::min(dist, std::abs(q.position - P.center));
        P.R = std::min(0.8, 0.4 * dist);
        if (P.R < 8.0 * hc)
            throw std::invalid_argument("marked points too close together for the grid resolution");
        P.h = hp;
        P.nt = opt.patch_theta;
        const double span = 23.0 / std::min(1.0, 2.0 * P.beta);
        P.ns = static_cast<int>(std::ceil(span / hp)) + 1;
        P.s_min = std::log(P.R) - (P.ns - 1) * hp;
        P.u.assign(static_cast<std::size_t>(P.ns) * P.nt, 0.0);
        S.patches.push_back(P);
    }
    // Hole of patch k: owner-chart radius below 0.55 R.
    auto in_hole = [&](Chart c, cdouble z) {
        const SamplePoint p = SamplePoint::at(c, z);
        for (const auto& P : S.patches) {
            auto d = patch_offset(atlas, P, p);
            if (d && std::abs(*d) < 0.55 * P.R) return true;
        }
        return false;
    };
    for (Chart c : {Chart::xi, Chart::eta}) {
        auto& G = S.charts[ci(c)];
        std::vector<char> active(G.u.size(), 0);
        for (int i = 1; i < G.n - 1; ++i)
            for (int j = 1; j < G.n - 1; ++j)
                if (!in_hole(c, cdouble(G.x(i), G.x(j)))) active[G.at(i, j)] = 1;
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j) {
                const auto a = G.at(i, j);
                if (active[a]) {
                    G.kind[a] = 1;
                    continue;
                }
                bool near = false;
                for (int di = -1; di <= 1 && !near; ++di)
                    for (int dj = -1; dj <= 1 && !near; ++dj) {
                        const int ii = i + di, jj = j + dj;
                        if (ii >= 0 && jj >= 0 && ii < G.n && jj < G.n && active[G.at(ii, jj)]) near = true;
                    }
                G.kind[a] = near ? 2 : 0;
            }
    }
}

void Assembler::number_unknowns() {
    nunk = 0;
    for (int c = 0; c < 2; ++c) {
        const auto& G = S.charts[static_cast<std::size_t>(c)];
        cart_col[static_cast<std::size_t>(c)].assign(G.u.size(), -1);
        for (std::size_t a = 0; a < G.u.size(); ++a)
            if (G.kind[a] != 0) cart_col[static_cast<std::size_t>(c)][a] = nunk++;
    }
    patch_base.clear();
    for (const auto& P : S.patches) {
        patch_base.push_back(nunk);
        nunk += P.ns * P.nt;
    }
    bordered = S.config.size() == 2;
    if (bordered) border_col = nunk++;
}

void Assembler::build_constraints() {
    const auto& atlas = S.atlas;
    fringe.clear();
    // Donor from a patch (cubic in s and theta).
    auto from_patch = [&](std::size_t k, const SamplePoint& p, Chart target, Constraint& con) {
        const auto& P = S.patches[k];
        auto d = patch_offset(atlas, P, p);
        if (!d) return false;
        const double r = std::abs(*d);
        if (!(r > 0.0) || r > P.R * std::exp(-1.5 * P.h)) return false;
        const double fs = (std::max(std::log(r), P.s_min) - P.s_min) / P.h;
        const int i0 = clamp_origin(static_cast<int>(std::floor(fs)) - 1, P.ns, 4);
        const double ft = wrap_angle(std::arg(*d)) / P.h;
        const int t0 = static_cast<int>(std::floor(ft)) - 1;
        const auto ws = lagrange<4>(fs - i0);
        const auto wt = lagrange<4>(ft - t0);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const int t = ((t0 + b) % P.nt + P.nt) % P.nt;
                con.terms.push_back({patch_base[k] + static_cast<int>(P.at(i0 + a, t)), ws[a] * wt[b]});
            }
        con.offset = atlas.transition(p, P.chart, target);
        return true;
    };
    auto from_cart = [&](Chart dc, const SamplePoint& p, Chart target, Constraint& con) {
        const auto& G = S.charts[ci(dc)];
        auto z = chart_position(atlas, p, dc);
        if (!z) return false;
        int i0, j0;
        double tx, ty;
        if (!cartesian_stencil<4>(G, *z, i0, j0, tx, ty)) return false;
        const auto wx = lagrange<4>(tx);
        const auto wy = lagrange<4>(ty);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                con.terms.push_back({cart_col[ci(dc)][G.at(i0 + a, j0 + b)], wx[a] * wy[b]});
        con.offset = atlas.transition(p, dc, target);
        return true;
    };

    for (Chart c : {Chart::xi, Chart::eta}) {
        const auto& G = S.charts[ci(c)];
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j) {
                const auto a = G.at(i, j);
                if (G.kind[a] != 2) continue;
                const SamplePoint p = SamplePoint::at(c, cdouble(G.x(i), G.x(j)));
                Constraint con{cart_col[ci(c)][a], {}, 0.0};
                bool ok = false;
                for (std::size_t k = 0; k < S.patches.size() && !ok; ++k) {
                    con.terms.clear();
                    ok = from_patch(k, p, c, con);
                }
                if (!ok) {
                    con.terms.clear();
                    ok = from_cart(other(c), p, c, con);
                }
                if (!ok)
                    throw std::runtime_error("no interpolation donor for a chart fringe node at " +
                                             to_string(c) + " (" + std::to_string(G.x(i)) + ", " +
                                             std::to_string(G.x(j)) + ")");
                fringe.push_back(std::move(con));
            }
    }
    for (std::size_t k = 0; k < S.patches.size(); ++k) {
        const auto& P = S.patches[k];
        const int i = P.ns - 1;
        for (int t = 0; t < P.nt; ++t) {
            const cdouble d = std::polar(std::exp(P.s(i)), t * P.h);
            const SamplePoint p{P.chart, P.center + d, P.puncture, d};
            Constraint con{patch_base[k] + static_cast<int>(P.at(i, t)), {}, 0.0};
            // Prefer the chart in which the ring sits deeper.
            Chart first = P.chart, second = other(P.chart);
            auto z1 = chart_position(atlas, p, first), z2 = chart_position(atlas, p, second);
            if (z2 && (!z1 || box_depth(S.chart(second), *z2) > box_depth(S.chart(first), *z1) + 8))
                std::swap(first, second);
            bool ok = from_cart(first, p, P.chart, con);
            if (!ok) {
                con.terms.clear();
                ok = from_cart(second, p, P.chart, con);
            }
            if (!ok) throw std::runtime_error("no interpolation donor for a patch ring node");
            fringe.push_back(std::move(con));
        }
    }
}

void Assembler::precompute_sources() {
    const auto& atlas = S.atlas;
    for (Chart c : {Chart::xi, Chart::eta}) {
        const auto& G = S.charts[ci(c)];
        auto& F = cart_F[ci(c)];
        F.assign(G.u.size(), 0.0);
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j) {
                const auto a = G.at(i, j);
                if (G.kind[a] == 0) continue;
                const SamplePoint p = SamplePoint::at(c, cdouble(G.x(i), G.x(j)));
                F[a] = -S.kappa * std::exp(2.0 * atlas.singular_log(p));
            }
    }
    patch_F.clear();
    for (const auto& P : S.patches) {
        std::vector<double> F(static_cast<std::size_t>(P.ns + 1) * P.nt, 0.0);
        for (int i = -1; i < P.ns; ++i)
            for (int t = 0; t < P.nt; ++t) {
                const double s = P.s(i);
                const cdouble d = std::polar(std::exp(s), t * P.h);
                const SamplePoint p{P.chart, P.center + d, P.puncture, d};
                // e^{2s} |z - a|^{2 beta - 2} times the other factors, with log|d| = s exactly.
                const double logw = atlas.singular_log(p) - (P.beta - 1.0) * std::log(std::abs(d)) +
                                    (P.beta - 1.0) * s + s;
                F[static_cast<std::size_t>(i + 1) * P.nt + t] = -S.kappa * std::exp(2.0 * logw);
            }
        patch_F.push_back(std::move(F));
    }
}

void Assembler::initial_guess() {
    // Round metric times chordal-distance powers, written as a regular part in each chart,
    // then shifted so that the area is the Gauss-Bonnet value.
    const ChartAtlas atlas = S.atlas;
    auto u0 = [atlas, this](Chart c, cdouble z) {
        const double q = 1.0 + std::norm(z);
        double u = std::log(2.0 / q) - 0.5 * std::log(S.kappa);
        for (const auto& pc : atlas.punctures(c)) u += (pc.beta - 1.0) * (-0.5 * std::log(q * (1.0 + std::norm(pc.position))));
        for (std::size_t k = 0; k < S.config.size(); ++k) {
            const int idx = static_cast<int>(k);
            bool finite = false;
            for (const auto& pc : atlas.punctures(c)) finite |= pc.index == idx;
            if (!finite) u += (atlas.beta(idx) - 1.0) * (-0.5 * std::log(q));
        }
        return u;
    };
    QuadratureOptions qo;
    qo.cartesian_nodes = 161;
    qo.patch_step = 0.1;
    qo.patch_theta = 32;
    qo.tail = 1e-8;
    const auto guess = ConformalMetric::closed_form(S.config, S.kappa,
                                                    [&](const SamplePoint& p) { return u0(p.chart, p.z); }, "guess");
    const auto area = total_area(guess, qo);
    const double shift = 0.5 * std::log(area.expected / area.area);
    for (Chart c : {Chart::xi, Chart::eta}) {
        auto& G = S.charts[ci(c)];
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j) G.u[G.at(i, j)] = u0(c, cdouble(G.x(i), G.x(j))) + shift;
    }
    for (auto& P : S.patches)
        for (int i = 0; i < P.ns; ++i)
            for (int t = 0; t < P.nt; ++t)
                P.u[P.at(i, t)] = u0(P.chart, P.center + std::polar(std::exp(P.s(i)), t * P.h)) + shift;
    mu = 0.0;
}

Eigen::VectorXd Assembler::gather() const {
    Eigen::VectorXd U(nunk);
    for (int c = 0; c < 2; ++c) {
        const auto& G = S.charts[static_cast<std::size_t>(c)];
        for (std::size_t a = 0; a < G.u.size(); ++a)
            if (cart_col[static_cast<std::size_t>(c)][a] >= 0) U[cart_col[static_cast<std::size_t>(c)][a]] = G.u[a];
    }
    for (std::size_t k = 0; k < S.patches.size(); ++k)
        for (std::size_t a = 0; a < S.patches[k].u.size(); ++a) U[patch_base[k] + static_cast<int>(a)] = S.patches[k].u[a];
    if (bordered) U[border_col] = mu;
    return U;
}

void Assembler::scatter(const Eigen::VectorXd& U) {
    for (int c = 0; c < 2; ++c) {
        auto& G = S.charts[static_cast<std::size_t>(c)];
        for (std::size_t a = 0; a < G.u.size(); ++a) {
            const int col = cart_col[static_cast<std::size_t>(c)][a];
            G.u[a] = col >= 0 ? U[col] : std::numeric_limits<double>::quiet_NaN();
        }
    }
    for (std::size_t k = 0; k < S.patches.size(); ++k)
        for (std::size_t a = 0; a < S.patches[k].u.size(); ++a) S.patches[k].u[a] = U[patch_base[k] + static_cast<int>(a)];
    if (bordered) mu = U[border_col];
}

// Rows: one per unknown (equation or interpolation), plus the border row when present.
void Assembler::evaluate(const Eigen::VectorXd& U, double mu_val, Eigen::VectorXd& R,
                         std::vector<Eigen::Triplet<double>>* J) {
    R.setZero(nunk);
    if (J) J->clear();
    auto add = [&](int r, int c, double v) {
        if (J) J->emplace_back(r, c, v);
    };
    // Fourth-order compact 9-point scheme:
    // (4 sum_edge + sum_corner - 20 u0) / (6 h^2) = (8 f0 + sum_edge f) / 12.
    auto stencil_row = [&](int row, double h, const std::array<int, 9>& col, const std::array<double, 9>& F,
                           double bval) {
        // order: centre, E, W, N, S, NE, NW, SE, SW
        static constexpr double L[9] = {-20, 4, 4, 4, 4, 1, 1, 1, 1};
        static constexpr double M[9] = {8, 1, 1, 1, 1, 0, 0, 0, 0};
        const double ih = 1.0 / (6.0 * h * h);
        double r = 0.0;
        for (int q = 0; q < 9; ++q) {
            const double u = U[col[q]];
            const double f = F[q] * std::exp(2.0 * u);
            r += L[q] * ih * u - M[q] / 12.0 * f;
            add(row, col[q], L[q] * ih - M[q] / 12.0 * 2.0 * f);
        }
        if (bordered) {
            r += mu_val * bval;
            add(row, border_col, bval);
        }
        R[row] += r;
    };
    const double beta0 = S.config.betas()[0];
    auto kernel = [&](double absz) {
        const double p = std::pow(absz, 2.0 * beta0);
        return (1.0 - p) / (1.0 + p);
    };
    for (int c = 0; c < 2; ++c) {
        const auto& G = S.charts[static_cast<std::size_t>(c)];
        const auto& col = cart_col[static_cast<std::size_t>(c)];
        const auto& F = cart_F[static_cast<std::size_t>(c)];
        const double sign = c == 0 ? 1.0 : -1.0;
        for (int i = 1; i < G.n - 1; ++i)
            for (int j = 1; j < G.n - 1; ++j) {
                const auto a = G.at(i, j);
                if (G.kind[a] != 1) continue;
                const std::array<std::size_t, 9> nb = {a, G.at(i + 1, j), G.at(i - 1, j), G.at(i, j + 1), G.at(i, j - 1),
                                                       G.at(i + 1, j + 1), G.at(i - 1, j + 1), G.at(i + 1, j - 1),
                                                       G.at(i - 1, j - 1)};
                std::array<int, 9> cc;
                std::array<double, 9> ff;
                for (int q = 0; q < 9; ++q) {
                    cc[q] = col[nb[q]];
                    ff[q] = F[nb[q]];
                }
                const double bval = bordered ? sign * kernel(std::abs(cdouble(G.x(i), G.x(j)))) : 0.0;
                stencil_row(col[a], G.h, cc, ff, bval);
            }
    }
    for (std::size_t k = 0; k < S.patches.size(); ++k) {
        const auto& P = S.patches[k];
        const auto& F = patch_F[k];
        const int base = patch_base[k];
        const double sign = P.chart == Chart::xi ? 1.0 : -1.0;
        auto idx = [&](int i, int t) {
            if (i < 0) i = -i;  // mirror ghost row (zero normal derivative at s_min)
            t = (t % P.nt + P.nt) % P.nt;
            return base + static_cast<int>(P.at(i, t));
        };
        auto fval = [&](int i, int t) {
            t = (t % P.nt + P.nt) % P.nt;
            return F[static_cast<std::size_t>(i + 1) * P.nt + t];
        };
        for (int i = 0; i < P.ns - 1; ++i)
            for (int t = 0; t < P.nt; ++t) {
                const std::array<int, 9> cc = {idx(i, t),         idx(i + 1, t),     idx(i - 1, t),
                                               idx(i, t + 1),     idx(i, t - 1),     idx(i + 1, t + 1),
                                               idx(i - 1, t + 1), idx(i + 1, t - 1), idx(i - 1, t - 1)};
                const std::array<double, 9> ff = {fval(i, t),         fval(i + 1, t),     fval(i - 1, t),
                                                  fval(i, t + 1),     fval(i, t - 1),     fval(i + 1, t + 1),
                                                  fval(i - 1, t + 1), fval(i + 1, t - 1), fval(i - 1, t - 1)};
                const double bval = bordered ? sign * kernel(std::exp(P.s(i))) * std::exp(2.0 * P.s(i)) : 0.0;
                stencil_row(base + static_cast<int>(P.at(i, t)), P.h, cc, ff, bval);
            }
    }
    for (const auto& con : fringe) {
        double r = U[con.row] - con.offset;
        add(con.row, con.row, 1.0);
        for (const auto& t : con.terms) {
            r -= t.w * U[t.col];
            add(con.row, t.col, -t.w);
        }
        R[con.row] = r;
    }
    if (bordered) {
        // Fix the dilation: the regular part at 0 equals the regular part at infinity.
        const auto& P0 = S.patches[0];
        const auto& P1 = S.patches[1];
        double r = 0.0;
        for (int t = 0; t < P0.nt; ++t) {
            r += U[patch_base[0] + static_cast<int>(P0.at(0, t))] / P0.nt;
            add(border_col, patch_base[0] + static_cast<int>(P0.at(0, t)), 1.0 / P0.nt);
        }
        for (int t = 0; t < P1.nt; ++t) {
            r -= U[patch_base[1] + static_cast<int>(P1.at(0, t))] / P1.nt;
            add(border_col, patch_base[1] + static_cast<int>(P1.at(0, t)), -1.0 / P1.nt);
        }
        R[border_col] = r;
    }
}

bool Assembler::newton(std::vector<double>) {
    using SpMat = Eigen::SparseMatrix<double>;
    Eigen::VectorXd U = gather();
    Eigen::VectorXd R;
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    bool analyzed = false;
    evaluate(U, bordered ? U[border_col] : 0.0, R, &trip);
    double res = R.lpNorm<Eigen::Infinity>();
    if (opt.verbose) {
        double fr = 0.0;
        int worst = -1;
        for (const auto& con : fringe)
            if (std::abs(R[con.row]) > fr) {
                fr = std::abs(R[con.row]);
                worst = con.row;
            }
        std::fprintf(stderr, "  fringe residual %.3e at %s\n", fr, worst >= 0 ? describe(worst).c_str() : "-");
    }
    for (int it = 0; it < opt.max_newton; ++it) {
        if (opt.verbose) {
            Eigen::Index where;
            R.cwiseAbs().maxCoeff(&where);
            std::fprintf(stderr, "  newton %d  residual %.3e at %s\n", it, res, describe(static_cast<int>(where)).c_str());
        }
        if (res < opt.newton_tol) {
            S.report.residual = res;
            scatter(U);
            return true;
        }
        SpMat Jm(nunk, nunk);
        Jm.setFromTriplets(trip.begin(), trip.end());
        if (!analyzed) {
            lu.analyzePattern(Jm);
            analyzed = true;
        }
        lu.factorize(Jm);
        if (lu.info() != Eigen::Success) {
            S.report.message = "sparse LU factorization failed";
            return false;
        }
        const Eigen::VectorXd dU = lu.solve(-R);
        ++S.report.newton_iterations;
        double alpha = 1.0;
        bool accepted = false;
        Eigen::VectorXd Rn;
        const double l2 = R.norm();
        for (int ls = 0; ls < 10; ++ls) {
            Eigen::VectorXd Un = U + alpha * dU;
            evaluate(Un, bordered ? Un[border_col] : 0.0, Rn, nullptr);
            const double rn = Rn.lpNorm<Eigen::Infinity>();
            if (std::isfinite(rn) && (Rn.norm() < (1.0 - 1e-4 * alpha) * l2 || rn < opt.newton_tol)) {
                U = Un;
                res = rn;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (res < 1e3 * opt.newton_tol) {
                S.report.residual = res;
                scatter(U);
                return true;
            }
            S.report.message = "line search failed";
            S.report.residual = res;
            return false;
        }
        if (alpha == 1.0 && dU.lpNorm<Eigen::Infinity>() < 1e-13) {
            S.report.residual = res;
            scatter(U);
            return true;
        }
        evaluate(U, bordered ? U[border_col] : 0.0, R, &trip);
    }
    S.report.residual = res;
    S.report.message = "Newton iteration limit reached";
    return false;
}

}  // namespace

GridSolution solve_liouville_grid(const ConeConfig& config, double kappa, const SolverOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = config.troyanov();
    if (!tr.pass) throw std::invalid_argument("configuration is not admissible: " + tr.reason);
    for (double b : config.betas())
        if (!(b < 1.0)) throw std::invalid_argument("solve_liouville needs every angle below 1");
    if (config.size() == 2) {
        const auto& p = config.points();
        const bool ok = (!p[0].is_infinity() && p[0].value() == 0.0 && p[1].is_infinity()) ||
                        (!p[1].is_infinity() && p[1].value() == 0.0 && p[0].is_infinity());
        if (!ok) throw std::invalid_argument("d = 2 solves need the marked points 0 and infinity");
    }
    if (opt.grid < 33 || opt.grid % 2 == 0) throw std::invalid_argument("grid size must be odd and at least 33");
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");

    GridSolution sol;
    sol.config = config;
    sol.kappa = kappa;
    sol.atlas = ChartAtlas(config);
    sol.options = opt;

    Assembler A(sol, opt);
    A.build_geometry();
    A.number_unknowns();
    A.build_constraints();
    A.precompute_sources();
    A.initial_guess();
    sol.report.unknowns = static_cast<std::size_t>(A.nunk);

    bool ok = A.newton();
    if (!ok && opt.continuation && config.size() >= 3) {
        // Deform the angles from 1 down to their targets.
        const auto target = config.betas();
        double gap = 0.0;
        for (double b : target) gap = std::max(gap, 1.0 - b);
        const int steps = std::max(1, static_cast<int>(std::ceil(gap / opt.continuation_step)));
        ok = true;
        for (int s = 1; s <= steps && ok; ++s) {
            const double t = static_cast<double>(s) / steps;
            std::vector<Angle> ang;
            for (double b : target) ang.emplace_back(1.0 - t * (1.0 - b));
            ConeConfig step_cfg(config.points(), ang, AngleContext::prop2);
            sol.config = step_cfg;
            sol.atlas = ChartAtlas(step_cfg);
            for (std::size_t k = 0; k < sol.patches.size(); ++k) sol.patches[k].beta = ang[k].value;
            A.build_constraints();
            A.precompute_sources();
            if (s == 1) A.initial_guess();
            ok = A.newton();
            ++sol.report.continuation_steps;
        }
        sol.config = config;
        sol.atlas = ChartAtlas(config);
    }
    sol.report.converged = ok;
    if (ok) sol.report.message = "converged";
    sol.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!ok) throw std::runtime_error("Liouville solver did not converge: " + sol.report.message +
                                      " (residual " + std::to_string(sol.report.residual) + ")");
    return sol;
}

ConformalMetric solve_liouville(const ConeConfig& config, double kappa, const SolverOptions& opt) {
    return ConformalMetric::from_grid(std::make_shared<const GridSolution>(solve_liouville_grid(config, kappa, opt)));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct LocalStencil {
    // kind 0: Cartesian block, 1: patch
    int kind = 0;
    Chart block_chart = Chart::xi;
    std::size_t patch = 0;
    int i0 = 0, j0 = 0;
    int m = 6;
};

template <int M>
double eval_cart(const CartesianGrid& G, int i0, int j0, cdouble z) {
    const auto wx = lagrange<M>((z.real() + G.L) / G.h - i0);
    const auto wy = lagrange<M>((z.imag() + G.L) / G.h - j0);
    double v = 0.0;
    for (int a = 0; a < M; ++a) {
        double row = 0.0;
        for (int b = 0; b < M; ++b) row += wy[b] * G.u[G.at(i0 + a, j0 + b)];
        v += wx[a] * row;
    }
    return v;
}

double eval_patch(const PolarPatch& P, int i0, int t0, cdouble d) {
    const double s = std::max(std::log(std::abs(d)), P.s_min);
    const auto ws = lagrange<6>((s - P.s_min) / P.h - i0);
    double th = wrap_angle(std::arg(d)) / P.h;
    // keep theta continuous relative to the stencil origin
    if (th - t0 > P.nt / 2.0) th -= P.nt;
    if (th - t0 < -P.nt / 2.0) th += P.nt;
    const auto wt = lagrange<6>(th - t0);
    double v = 0.0;
    for (int a = 0; a < 6; ++a) {
        double row = 0.0;
        for (int b = 0; b < 6; ++b) {
            const int t = ((t0 + b) % P.nt + P.nt) % P.nt;
            row += wt[b] * P.u[P.at(i0 + a, t)];
        }
        v += ws[a] * row;
    }
    return v;
}

LocalStencil choose_stencil(const GridSolution& S, const SamplePoint& p) {
    LocalStencil st;
    auto try_patches = [&](double depth) {
        for (std::size_t k = 0; k < S.patches.size(); ++k) {
            const auto& P = S.patches[k];
            auto d = patch_offset(S.atlas, P, p);
            if (!d) continue;
            const double r = std::abs(*d);
            if (r <= P.R * std::exp(-depth * P.h)) {
                st.kind = 1;
                st.patch = k;
                st.block_chart = P.chart;
                const double s = std::max(r > 0 ? std::log(r) : P.s_min, P.s_min);
                st.i0 = clamp_origin(static_cast<int>(std::floor((s - P.s_min) / P.h)) - 2, P.ns, 6);
                st.j0 = static_cast<int>(std::floor(wrap_angle(std::arg(*d)) / P.h)) - 2;
                return true;
            }
        }
        return false;
    };
    if (try_patches(3.0)) return st;
    auto zxi = chart_position(S.atlas, p, Chart::xi);
    Chart first = zxi && std::abs(*zxi) <= 1.0 ? Chart::xi : Chart::eta;
    for (int m : {6, 4})
        for (Chart c : {first, other(first)}) {
            auto z = chart_position(S.atlas, p, c);
            if (!z) continue;
            int i0, j0;
            double tx, ty;
            bool ok = m == 6 ? cartesian_stencil<6>(S.chart(c), *z, i0, j0, tx, ty)
                             : cartesian_stencil<4>(S.chart(c), *z, i0, j0, tx, ty);
            if (!ok) continue;
            st.kind = 0;
            st.block_chart = c;
            st.i0 = i0;
            st.j0 = j0;
            st.m = m;
            return st;
        }
    if (try_patches(0.0)) return st;
    throw std::domain_error("point outside the solution grids");
}

double eval_stencil(const GridSolution& S, const LocalStencil& st, const SamplePoint& p) {
    double v;
    if (st.kind == 1) {
        const auto& P = S.patches[st.patch];
        auto d = patch_offset(S.atlas, P, p);
        v = eval_patch(P, st.i0, st.j0, *d);
    } else {
        auto z = chart_position(S.atlas, p, st.block_chart);
        if (!z) throw std::domain_error("evaluation point at chart infinity");
        const auto& G = S.chart(st.block_chart);
        v = st.m == 6 ? eval_cart<6>(G, st.i0, st.j0, *z) : eval_cart<4>(G, st.i0, st.j0, *z);
    }
    return v + S.atlas.transition(p, st.block_chart, p.chart);
}

}  // namespace

double GridSolution::regular_part(const SamplePoint& p) const { return eval_stencil(*this, choose_stencil(*this, p), p); }

std::function<double(const SamplePoint&)> GridSolution::local(const SamplePoint& p) const {
    const LocalStencil st = choose_stencil(*this, p);
    return [this, st](const SamplePoint& q) { return eval_stencil(*this, st, q); };
}

std::vector<GridSolution::Node> GridSolution::nodes() const {
    std::vector<Node> out;
    for (const auto& G : charts)
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j)
                if (G.kind[G.at(i, j)] == 1) out.push_back({SamplePoint::at(G.chart, cdouble(G.x(i), G.x(j))), G.u[G.at(i, j)]});
    for (const auto& P : patches)
        for (int i = 0; i < P.ns - 1; ++i)
            for (int t = 0; t < P.nt; ++t) {
                const cdouble d = std::polar(std::exp(P.s(i)), t * P.h);
                out.push_back({SamplePoint{P.chart, P.center + d, P.puncture, d}, P.u[P.at(i, t)]});
            }
    return out;
}

}  // namespace conekit
