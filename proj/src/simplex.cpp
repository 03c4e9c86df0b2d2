#include "carrierflow/simplex.hpp"

#include <klu.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "carrierflow/errors.hpp"

namespace carrierflow {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

namespace {

double power_of_two(double x) { return std::exp2(std::round(std::log2(x))); }

/// Problem in the internal equality form A x + s = b, with power-of-two row,
/// column and objective scaling. Columns n..n+m-1 are the slacks.
struct ScaledProblem {
    int m = 0;
    int n = 0;
    std::vector<int> col_start;
    std::vector<int> row_index;
    std::vector<double> values;
    std::vector<double> cost;   // n + m
    std::vector<double> lower;  // n + m
    std::vector<double> upper;  // n + m
    std::vector<double> rhs;
    std::vector<double> row_scale;
    std::vector<double> col_scale;
    double obj_scale = 1.0;

    ScaledProblem(const SparseProblem& p, bool scale) : m(p.num_rows), n(p.num_cols) {
        col_start = p.col_start;
        row_index = p.row_index;
        values = p.values;
        row_scale.assign(m, 1.0);
        col_scale.assign(n, 1.0);
        if (scale) compute_scaling();
        for (int j = 0; j < n; ++j)
            for (int k = col_start[j]; k < col_start[j + 1]; ++k)
                values[k] *= row_scale[row_index[k]] * col_scale[j];

        cost.assign(n + m, 0.0);
        lower.assign(n + m, 0.0);
        upper.assign(n + m, 0.0);
        double cmax = 0.0;
        for (int j = 0; j < n; ++j) cmax = std::max(cmax, std::abs(p.objective[j] * col_scale[j]));
        obj_scale = (scale && cmax > 0.0) ? power_of_two(1.0 / cmax) : 1.0;
        for (int j = 0; j < n; ++j) {
            cost[j] = p.objective[j] * col_scale[j] * obj_scale;
            lower[j] = p.lower[j] / col_scale[j];
            upper[j] = p.upper[j] / col_scale[j];
        }
        rhs.resize(m);
        for (int i = 0; i < m; ++i) {
            rhs[i] = p.rhs[i] * row_scale[i];
            const int s = n + i;
            switch (p.sense[i]) {
                case RowSense::less_equal: lower[s] = 0.0; upper[s] = kInf; break;
                case RowSense::greater_equal: lower[s] = -kInf; upper[s] = 0.0; break;
                case RowSense::equal: lower[s] = 0.0; upper[s] = 0.0; break;
            }
        }
    }

    void compute_scaling() {
        std::vector<double> rmax(m), rmin(m);
        for (int pass = 0; pass < 4; ++pass) {
            std::fill(rmax.begin(), rmax.end(), 0.0);
            std::fill(rmin.begin(), rmin.end(), kInf);
            for (int j = 0; j < n; ++j)
                for (int k = col_start[j]; k < col_start[j + 1]; ++k) {
                    const double v = std::abs(values[k]) * col_scale[j] * row_scale[row_index[k]];
                    rmax[row_index[k]] = std::max(rmax[row_index[k]], v);
                    rmin[row_index[k]] = std::min(rmin[row_index[k]], v);
                }
            for (int i = 0; i < m; ++i)
                if (rmax[i] > 0.0) row_scale[i] *= power_of_two(1.0 / std::sqrt(rmax[i] * rmin[i]));
            for (int j = 0; j < n; ++j) {
                double cmax = 0.0, cmin = kInf;
                for (int k = col_start[j]; k < col_start[j + 1]; ++k) {
                    const double v = std::abs(values[k]) * col_scale[j] * row_scale[row_index[k]];
                    cmax = std::max(cmax, v);
                    cmin = std::min(cmin, v);
                }
                if (cmax > 0.0) col_scale[j] *= power_of_two(1.0 / std::sqrt(cmax * cmin));
            }
        }
    }

    kernels::CscView csc() const { return {m, n, col_start, row_index, values}; }

    /// Dense copy of column j (structural or slack).
    void column(int j, std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        if (j < n) {
            for (int k = col_start[j]; k < col_start[j + 1]; ++k) out[row_index[k]] = values[k];
        } else {
            out[j - n] = 1.0;
        }
    }
};

/// KLU factorization of the basis matrix plus a product-form eta file.
class BasisFactor {
public:
    BasisFactor() { klu_defaults(&common_); }
    ~BasisFactor() { release(); }
    BasisFactor(const BasisFactor&) = delete;
    BasisFactor& operator=(const BasisFactor&) = delete;

    bool factor(const ScaledProblem& sp, const std::vector<int>& basic) {
        etas_.clear();
        release();
        m_ = sp.m;
        if (m_ == 0) return true;
        bp_.assign(1, 0);
        bi_.clear();
        bx_.clear();
        for (int p = 0; p < m_; ++p) {
            const int j = basic[p];
            if (j < sp.n) {
                for (int k = sp.col_start[j]; k < sp.col_start[j + 1]; ++k) {
                    bi_.push_back(sp.row_index[k]);
                    bx_.push_back(sp.values[k]);
                }
            } else {
                bi_.push_back(j - sp.n);
                bx_.push_back(1.0);
            }
            bp_.push_back(static_cast<int>(bi_.size()));
        }
        symbolic_ = klu_analyze(m_, bp_.data(), bi_.data(), &common_);
        if (!symbolic_) return false;
        numeric_ = klu_factor(bp_.data(), bi_.data(), bx_.data(), symbolic_, &common_);
        return numeric_ != nullptr && common_.status == KLU_OK;
    }

    void ftran(std::vector<double>& v) const {
        if (m_ == 0) return;
        lu_solve(v);
        for (const auto& e : etas_) {
            const double xr = v[e.pos] / e.pivot;
            v[e.pos] = xr;
            if (xr != 0.0)
                for (std::size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * xr;
        }
    }

    void btran(std::vector<double>& v) const {
        if (m_ == 0) return;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = v[it->pos];
            for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
            v[it->pos] = s / it->pivot;
        }
        lu_solve_transposed(v);
    }

    void push_eta(int pos, const std::vector<double>& alpha) {
        Eta e;
        e.pos = pos;
        e.pivot = alpha[pos];
        for (int i = 0; i < m_; ++i)
            if (i != pos && std::abs(alpha[i]) > 1e-14) {
                e.idx.push_back(i);
                e.val.push_back(alpha[i]);
            }
        etas_.push_back(std::move(e));
    }

    std::size_t eta_count() const { return etas_.size(); }

private:
    void lu_solve(std::vector<double>& v) const {
        klu_solve(symbolic_, numeric_, m_, 1, v.data(), &common_);
    }

    void lu_solve_transposed(std::vector<double>& v) const {
        klu_tsolve(symbolic_, numeric_, m_, 1, v.data(), &common_);
    }

    void release() {
        if (numeric_) klu_free_numeric(&numeric_, &common_);
        if (symbolic_) klu_free_symbolic(&symbolic_, &common_);
    }

    struct Eta {
        int pos = 0;
        double pivot = 1.0;
        std::vector<int> idx;
        std::vector<double> val;
    };
    mutable klu_common common_;
    klu_symbolic* symbolic_ = nullptr;
    klu_numeric* numeric_ = nullptr;
    std::vector<int> bp_, bi_;
    std::vector<double> bx_;
    std::vector<Eta> etas_;
    int m_ = 0;
};

class Simplex {
public:
    Simplex(const SparseProblem& p, const SolveOptions& o)
        : problem_(p), opt_(o), sp_(p, o.scaling), m_(sp_.m), n_(sp_.n), total_(n_ + m_) {}

    SolveResult run();

private:
    void initial_basis();
    void crash_to_slacks();
    bool refactor();
    void compute_basic_values();
    bool any_infeasible() const;
    kernels::MoveMask movable(int j) const;
    void place_nonbasic(int j, BasisStatus preferred);
    SolveResult finish(SolveStatus status, const std::string& message);

    const SparseProblem& problem_;
    const SolveOptions& opt_;
    ScaledProblem sp_;
    int m_, n_, total_;

    std::vector<double> x_;  // nonbasic values (basic entries stale)
    std::vector<double> xb_;
    std::vector<int> basic_;
    std::vector<int> pos_;
    std::vector<BasisStatus> status_;
    std::vector<double> lb_basic_, ub_basic_;
    BasisFactor factor_;
    long iterations_ = 0;
    int factor_failures_ = 0;
};

void Simplex::place_nonbasic(int j, BasisStatus preferred) {
    const double l = sp_.lower[j], u = sp_.upper[j];
    BasisStatus s = preferred;
    if (s == BasisStatus::basic) s = BasisStatus::at_lower;
    if (s == BasisStatus::at_lower && std::isinf(l)) s = std::isinf(u) ? BasisStatus::free_zero : BasisStatus::at_upper;
    if (s == BasisStatus::at_upper && std::isinf(u)) s = std::isinf(l) ? BasisStatus::free_zero : BasisStatus::at_lower;
    if (s == BasisStatus::free_zero && !(std::isinf(l) && std::isinf(u)))
        s = std::isinf(l) ? BasisStatus::at_upper : BasisStatus::at_lower;
    status_[j] = s;
    pos_[j] = -1;
    x_[j] = s == BasisStatus::at_lower ? l : s == BasisStatus::at_upper ? u : 0.0;
}

void Simplex::initial_basis() {
    x_.assign(total_, 0.0);
    xb_.assign(m_, 0.0);
    basic_.assign(m_, -1);
    pos_.assign(total_, -1);
    status_.assign(total_, BasisStatus::at_lower);
    lb_basic_.assign(m_, 0.0);
    ub_basic_.assign(m_, 0.0);

    bool use_start = false;
    if (opt_.start_basis) {
        const Basis& b = *opt_.start_basis;
        if (static_cast<int>(b.columns.size()) == n_ && static_cast<int>(b.rows.size()) == m_) {
            int count = 0;
            for (auto s : b.columns) count += s == BasisStatus::basic;
            for (auto s : b.rows) count += s == BasisStatus::basic;
            use_start = count == m_;
        }
    }
    if (use_start) {
        const Basis& b = *opt_.start_basis;
        int p = 0;
        for (int j = 0; j < total_; ++j) {
            const BasisStatus s = j < n_ ? b.columns[j] : b.rows[j - n_];
            if (s == BasisStatus::basic) {
                basic_[p] = j;
                pos_[j] = p;
                status_[j] = BasisStatus::basic;
                ++p;
            } else {
                place_nonbasic(j, s);
            }
        }
    } else {
        for (int j = 0; j < n_; ++j) place_nonbasic(j, BasisStatus::at_lower);
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            pos_[n_ + i] = i;
            status_[n_ + i] = BasisStatus::basic;
        }
    }
    for (int p = 0; p < m_; ++p) {
        lb_basic_[p] = sp_.lower[basic_[p]];
        ub_basic_[p] = sp_.upper[basic_[p]];
    }
}

void Simplex::crash_to_slacks() {
    for (int p = 0; p < m_; ++p) {
        const int j = basic_[p];
        if (j < n_) {
            const double v = xb_[p];
            const double l = sp_.lower[j], u = sp_.upper[j];
            BasisStatus s = BasisStatus::free_zero;
            if (!std::isinf(l) && (std::isinf(u) || std::abs(v - l) <= std::abs(v - u))) s = BasisStatus::at_lower;
            else if (!std::isinf(u)) s = BasisStatus::at_upper;
            place_nonbasic(j, s);
        }
    }
    for (int j = n_; j < total_; ++j) pos_[j] = -1;
    for (int i = 0; i < m_; ++i) {
        basic_[i] = n_ + i;
        pos_[n_ + i] = i;
        status_[n_ + i] = BasisStatus::basic;
        lb_basic_[i] = sp_.lower[n_ + i];
        ub_basic_[i] = sp_.upper[n_ + i];
    }
}

bool Simplex::refactor() {
    if (factor_.factor(sp_, basic_)) {
        compute_basic_values();
        return true;
    }
    ++factor_failures_;
    crash_to_slacks();
    const bool ok = factor_.factor(sp_, basic_);
    compute_basic_values();
    return ok;
}

void Simplex::compute_basic_values() {
    std::vector<double> r(sp_.rhs);
    for (int j = 0; j < total_; ++j) {
        if (pos_[j] >= 0 || x_[j] == 0.0) continue;
        if (j < n_) {
            for (int k = sp_.col_start[j]; k < sp_.col_start[j + 1]; ++k) r[sp_.row_index[k]] -= sp_.values[k] * x_[j];
        } else {
            r[j - n_] -= x_[j];
        }
    }
    factor_.ftran(r);
    xb_ = std::move(r);
}

bool Simplex::any_infeasible() const {
    const double tol = opt_.feasibility_tol;
    for (int p = 0; p < m_; ++p)
        if (xb_[p] < lb_basic_[p] - tol || xb_[p] > ub_basic_[p] + tol) return true;
    return false;
}

kernels::MoveMask Simplex::movable(int j) const {
    if (pos_[j] >= 0) return kernels::kMoveNone;
    if (sp_.lower[j] == sp_.upper[j]) return kernels::kMoveNone;
    switch (status_[j]) {
        case BasisStatus::at_lower: return kernels::kMoveUp;
        case BasisStatus::at_upper: return kernels::kMoveDown;
        case BasisStatus::free_zero: return kernels::kMoveBoth;
        default: return kernels::kMoveNone;
    }
}

SolveResult Simplex::run() {
    initial_basis();
    if (!refactor() && factor_failures_ > 1) return finish(SolveStatus::iteration_limit, "singular slack basis");

    const long max_iter = opt_.max_iterations > 0 ? opt_.max_iterations
                                                  : std::max<long>(20000, 40L * (total_ + 1));
    const auto exec = opt_.execution;
    const auto view = sp_.csc();

    std::vector<double> cost_phase(total_, 0.0);
    std::vector<double> y(m_), d(total_), alpha(m_);
    std::vector<kernels::MoveMask> mask(total_);
    int degenerate_run = 0;
    bool bland = false;
    bool fresh = true;
    int stuck = 0;

    while (true) {
        if (iterations_ >= max_iter) return finish(SolveStatus::iteration_limit, "iteration limit reached");
        if (factor_failures_ > 8) return finish(SolveStatus::iteration_limit, "repeated basis factorization failure");

        const bool phase_one = any_infeasible();
        const double tol = opt_.feasibility_tol;
        for (int p = 0; p < m_; ++p) {
            double c;
            if (phase_one) c = xb_[p] < lb_basic_[p] - tol ? -1.0 : xb_[p] > ub_basic_[p] + tol ? 1.0 : 0.0;
            else c = sp_.cost[basic_[p]];
            y[p] = c;
        }
        factor_.btran(y);
        for (int j = 0; j < total_; ++j) mask[j] = movable(j);
        kernels::price_columns(exec, view, phase_one ? cost_phase : sp_.cost, y, mask, d);
        const auto entering = kernels::choose_entering(exec, d, mask, opt_.optimality_tol, bland);

        if (entering.column < 0) {
            if (!fresh) {
                refactor();
                fresh = true;
                continue;
            }
            if (phase_one) return finish(SolveStatus::infeasible, "phase one ended with residual infeasibility");
            return finish(SolveStatus::optimal, "");
        }

        const int q = entering.column;
        const double dir = entering.reduced_cost < 0.0 ? 1.0 : -1.0;
        sp_.column(q, alpha);
        factor_.ftran(alpha);

        kernels::RatioInput in{alpha, xb_, lb_basic_, ub_basic_, basic_, dir, opt_.feasibility_tol,
                               opt_.pivot_tol, phase_one};
        kernels::RatioChoice choice;
        if (bland) {
            choice = kernels::ratio_select_bland(exec, in);
        } else {
            const double bound = kernels::ratio_bound(exec, in);
            if (!std::isinf(bound)) choice = kernels::ratio_select(exec, in, bound);
        }
        const double lq = sp_.lower[q], uq = sp_.upper[q];
        const double flip = (std::isinf(lq) || std::isinf(uq)) ? kInf : uq - lq;
        const bool do_flip = !std::isinf(flip) && (choice.position < 0 || flip <= choice.step);

        if (choice.position < 0 && !do_flip) {
            if (!phase_one) return finish(SolveStatus::unbounded, "ray found in phase two");
            // A phase-one improving direction always meets a breakpoint; losing
            // it means the factorization drifted.
            if (++stuck > 3) return finish(SolveStatus::iteration_limit, "phase one lost its breakpoint");
            refactor();
            fresh = true;
            continue;
        }
        stuck = 0;

        const double step = do_flip ? flip : choice.step;
        kernels::update_values(exec, xb_, alpha, -dir * step);
        ++iterations_;

        if (step <= 1e-12) {
            if (++degenerate_run > opt_.degenerate_before_bland) bland = true;
        } else {
            degenerate_run = 0;
            bland = false;
        }

        if (do_flip) {
            if (status_[q] == BasisStatus::at_lower) {
                status_[q] = BasisStatus::at_upper;
                x_[q] = uq;
            } else {
                status_[q] = BasisStatus::at_lower;
                x_[q] = lq;
            }
            fresh = false;
            continue;
        }

        const int r = choice.position;
        const int leaving = basic_[r];
        const double entering_value = x_[q] + dir * step;
        const double ll = sp_.lower[leaving], ul = sp_.upper[leaving];
        if (ll == ul) {
            status_[leaving] = BasisStatus::at_lower;
            x_[leaving] = ll;
        } else if (choice.to_upper) {
            status_[leaving] = BasisStatus::at_upper;
            x_[leaving] = ul;
        } else {
            status_[leaving] = BasisStatus::at_lower;
            x_[leaving] = ll;
        }
        pos_[leaving] = -1;
        basic_[r] = q;
        pos_[q] = r;
        status_[q] = BasisStatus::basic;
        xb_[r] = entering_value;
        lb_basic_[r] = lq;
        ub_basic_[r] = uq;
        factor_.push_eta(r, alpha);
        fresh = false;

        if (static_cast<int>(factor_.eta_count()) >= opt_.refactor_interval) {
            refactor();
            fresh = true;
        }
    }
}

SolveResult Simplex::finish(SolveStatus status, const std::string& message) {
    SolveResult res;
    res.status = status;
    res.message = message;
    res.iterations = iterations_;

    std::vector<double> full(total_);
    for (int j = 0; j < total_; ++j) full[j] = pos_[j] >= 0 ? xb_[pos_[j]] : x_[j];

    res.primal.resize(n_);
    for (int j = 0; j < n_; ++j) res.primal[j] = full[j] * sp_.col_scale[j];

    std::vector<double> y(m_);
    for (int p = 0; p < m_; ++p) y[p] = sp_.cost[basic_[p]];
    factor_.btran(y);
    res.duals.resize(m_);
    for (int i = 0; i < m_; ++i) res.duals[i] = y[i] * sp_.row_scale[i] / sp_.obj_scale;

    res.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) {
        double s = sp_.cost[j];
        for (int k = sp_.col_start[j]; k < sp_.col_start[j + 1]; ++k) s -= y[sp_.row_index[k]] * sp_.values[k];
        res.reduced_costs[j] = pos_[j] >= 0 ? 0.0 : s / (sp_.col_scale[j] * sp_.obj_scale);
    }

    res.basis.columns.assign(status_.begin(), status_.begin() + n_);
    res.basis.rows.assign(status_.begin() + n_, status_.end());

    double obj = problem_.objective_offset;
    for (int j = 0; j < n_; ++j) obj += problem_.objective[j] * res.primal[j];
    res.objective = obj;
    res.best_bound = obj;
    return res;
}

}  // namespace

SolveResult solve_lp(const SparseProblem& problem, const SolveOptions& options) {
    problem.validate();
    Simplex s(problem, options);
    return s.run();
}

}  // namespace carrierflow
