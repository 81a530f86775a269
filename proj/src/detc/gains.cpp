#include "detc/gains.hpp"

#include <cmath>
#include <string>

#include "detc/errors.hpp"

namespace detc {

double SubsystemGains::xi_coeff(int k, int l) const {
    if (k < 1 || l < 1 || l > k || k > static_cast<int>(xi.size())) return 0.0;
    return xi[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)];
}

namespace {

void check_design_parameters(const ScenarioConfig& cfg, const std::vector<int>& orders) {
    const auto n = orders.size();
    if (cfg.c.size() != n || cfg.varpi1.size() != n || cfg.varpi2.size() != n)
        throw SpecError("gain table: c/varpi tables must have one row per subsystem");
    for (std::size_t i = 0; i < n; ++i) {
        const auto ni = static_cast<std::size_t>(orders[i]);
        if (cfg.c[i].size() != ni) throw SpecError("gain table: c row size must equal order");
        for (double v : cfg.c[i])
            if (!(v > 0.0)) throw SpecError("gain table: c entries must be strictly positive");
        if (cfg.varpi1[i].size() != n || cfg.varpi2[i].size() != n)
            throw SpecError("gain table: varpi tables must be N x N x n_i");
        for (std::size_t j = 0; j < n; ++j) {
            if (cfg.varpi1[i][j].size() != ni || cfg.varpi2[i][j].size() != ni)
                throw SpecError("gain table: varpi tables must be N x N x n_i");
            for (std::size_t k = 0; k < ni; ++k)
                if (!(cfg.varpi1[i][j][k] > 0.0) || !(cfg.varpi2[i][j][k] > 0.0))
                    throw SpecError("gain table: varpi entries must be strictly positive");
        }
    }
}

}  // namespace

GainTable compute_gain_table(const ScenarioConfig& cfg, const std::vector<int>& orders) {
    check_design_parameters(cfg, orders);
    const int N = static_cast<int>(orders.size());

    GainTable table;
    table.sub.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        SubsystemGains& g = table.sub[static_cast<std::size_t>(i)];
        const int n = orders[static_cast<std::size_t>(i)];
        g.order = n;
        g.K.resize(static_cast<std::size_t>(n));
        if (n > 1) g.xi.resize(static_cast<std::size_t>(n - 1));

        auto xi_at = [&](int k, int l) { return g.xi_coeff(k, l); };
        // ∂z_k/∂x_m = δ_{km} - ξ_{k-1,m}
        auto dz_dx = [&](int k, int m) {
            if (k < 1) return 0.0;
            return (k == m ? 1.0 : 0.0) - xi_at(k - 1, m);
        };

        for (int k = 1; k <= n; ++k) {
            double recip = 0.0;
            for (int j = 0; j < N; ++j)
                recip += 1.0 / (4.0 * cfg.varpi1[static_cast<std::size_t>(i)]
                                               [static_cast<std::size_t>(j)]
                                               [static_cast<std::size_t>(k - 1)]) +
                         1.0 / (4.0 * cfg.varpi2[static_cast<std::size_t>(i)]
                                               [static_cast<std::size_t>(j)]
                                               [static_cast<std::size_t>(k - 1)]);
            double xi_sq = 0.0;
            for (int l = 1; l <= k - 1; ++l) xi_sq += xi_at(k - 1, l) * xi_at(k - 1, l);
            g.K[static_cast<std::size_t>(k - 1)] =
                cfg.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] + recip +
                recip * xi_sq;

            if (k < n) {
                auto& row = g.xi[static_cast<std::size_t>(k - 1)];
                row.resize(static_cast<std::size_t>(k));
                const double Kk = g.K[static_cast<std::size_t>(k - 1)];
                for (int m = 1; m <= k; ++m)
                    row[static_cast<std::size_t>(m - 1)] =
                        -Kk * dz_dx(k, m) - dz_dx(k - 1, m) + xi_at(k - 1, m - 1);
            }
        }

        // Layered z/x relationship: row r of A carries -ξ_{r-2,l} under
        // x_{l+1}, row r of B carries (-1, -K_{r-1}) under (z_{r-2}, z_{r-1}).
        g.A = Eigen::MatrixXd::Identity(n, n);
        g.B = Eigen::MatrixXd::Identity(n, n);
        if (n >= 2) g.B(1, 0) = -g.K[0];
        for (int r = 3; r <= n; ++r) {
            for (int l = 1; l <= r - 2; ++l) g.A(r - 1, l) = -xi_at(r - 2, l);
            g.B(r - 1, r - 3) = -1.0;
            g.B(r - 1, r - 2) = -g.K[static_cast<std::size_t>(r - 2)];
        }
        g.T = g.A.triangularView<Eigen::UnitLower>().solve(g.B);

        // Cross-check against the direct map z = M x, M unit lower-triangular
        // with row k = e_k - (ξ_{k-1,1..k-1}, 0,...).
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
        for (int k = 2; k <= n; ++k)
            for (int l = 1; l <= k - 1; ++l) M(k - 1, l - 1) = -xi_at(k - 1, l);
        const Eigen::MatrixXd T2 =
            M.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(n, n));
        // Layout mistakes produce matrix-scale disagreement; conditioning of
        // the solves only produces rounding at the matrix scale.
        const double scale = 1.0 + T2.cwiseAbs().maxCoeff();
        if ((g.T - T2).cwiseAbs().maxCoeff() > 1e-9 * scale)
            throw InternalError("gain table: transform constructions disagree for subsystem " +
                                std::to_string(i + 1));

        g.lemma1_constant = g.T.norm();
    }
    return table;
}

double lemma1_constant(const GainTable& table, int i) {
    if (i < 0 || i >= static_cast<int>(table.sub.size()))
        throw ContractError("lemma1_constant: subsystem index out of range");
    return table.sub[static_cast<std::size_t>(i)].lemma1_constant;
}

Lemma2Bounds lemma2_bounds(const GainTable& table, const TriggerThresholds& thresholds) {
    std::vector<int> orders;
    orders.reserve(table.sub.size());
    for (const auto& g : table.sub) orders.push_back(g.order);
    thresholds.validate(orders);

    Lemma2Bounds out;
    out.dz.resize(table.sub.size());
    out.dalpha.resize(table.sub.size());
    for (std::size_t i = 0; i < table.sub.size(); ++i) {
        const SubsystemGains& g = table.sub[i];
        const auto& dx = thresholds.dx[i];
        auto& dz = out.dz[i];
        auto& da = out.dalpha[i];
        dz.resize(static_cast<std::size_t>(g.order));
        da.resize(static_cast<std::size_t>(g.order));
        dz[0] = dx[0];
        da[0] = g.K[0] * dz[0];
        for (int k = 2; k <= g.order; ++k) {
            dz[static_cast<std::size_t>(k - 1)] =
                dx[static_cast<std::size_t>(k - 1)] + da[static_cast<std::size_t>(k - 2)];
            double a = g.K[static_cast<std::size_t>(k - 1)] * dz[static_cast<std::size_t>(k - 1)];
            for (int l = 1; l <= k - 1; ++l)
                a += std::abs(g.xi_coeff(k - 1, l)) * dx[static_cast<std::size_t>(l)];
            a += dz[static_cast<std::size_t>(k - 2)];
            da[static_cast<std::size_t>(k - 1)] = a;
        }
    }
    return out;
}

}  // namespace detc
