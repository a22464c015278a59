#include "flattori/symphony.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "flattori/reduction.hpp"

namespace flattori {

namespace {

void append_vec(std::string& s, const std::vector<Vec3>& v) {
    auto n = static_cast<std::uint32_t>(v.size());
    s.append(reinterpret_cast<const char*>(&n), sizeof n);
    for (const auto& x : v) s.append(reinterpret_cast<const char*>(x.data()), sizeof(std::int64_t) * 3);
}

IntRay negate(IntRay v) {
    for (auto& c : v) c = -c;
    return v;
}

IntRay diff(const IntRay& a, const IntRay& b) {
    IntRay out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

// f - g on the given Form3Vec coordinates
IntRay agreement(std::size_t coord) {
    IntRay v(12, 0);
    v[coord] = 1;
    v[6 + coord] = -1;
    return v;
}

bool holds_everywhere(const Cone& c, const IntRay& functional) { return c.contained_in_hyperplane(functional); }

}  // namespace

std::string InTuneCone::key() const {
    std::string s = cone.canonical_key();
    s.push_back(static_cast<char>(lambda));
    append_vec(s, xs);
    append_vec(s, ys);
    return s;
}

IntRay eval_functional(const Vec3& x, Side side) {
    IntRay v(12, 0);
    const std::size_t o = side == Side::F ? 0 : 6;
    v[o + 0] = x[0] * x[0];
    v[o + 1] = x[1] * x[1];
    v[o + 2] = x[2] * x[2];
    v[o + 3] = 2 * x[0] * x[1];
    v[o + 4] = 2 * x[0] * x[2];
    v[o + 5] = 2 * x[1] * x[2];
    return v;
}

IntRay lift(const IntRay& a, Side side) {
    if (a.size() != 6) throw DomainError("expected a constraint on form coordinates");
    IntRay v(12, 0);
    std::copy(a.begin(), a.end(), v.begin() + (side == Side::F ? 0 : 6));
    return v;
}

Cone saturate(const Cone& cone) {
    const auto& cat = schiemann_catalog();
    Cone cur = cone;
    for (;;) {
        if (cur.is_empty()) return cur;
        std::vector<IntRay> add;
        for (Side s : {Side::F, Side::G})
            for (const auto& [c, d] : cat.Cpairs) {
                IntRay ld = lift(d, s);
                if (cur.contained_in_hyperplane(lift(c, s)) && !cur.satisfies(ld)) add.push_back(ld);
            }
        if (add.empty()) return cur;
        cur = cur.add_halfspaces(add);
    }
}

std::vector<IntRay> pair_domain_closed() {
    std::vector<IntRay> out;
    for (Side s : {Side::F, Side::G})
        for (const auto& a : schiemann_catalog().Aset) out.push_back(lift(a, s));
    return out;
}

std::vector<IntRay> pair_domain_strict() {
    std::vector<IntRay> out;
    for (Side s : {Side::F, Side::G})
        for (const auto& b : schiemann_catalog().Bset) out.push_back(lift(b, s));
    return out;
}

InTuneCone initial_cone() {
    auto closed = pair_domain_closed();
    closed.push_back(agreement(0));
    closed.push_back(negate(agreement(0)));
    InTuneCone t;
    t.cone = saturate(Cone::from_constraints(12, closed, pair_domain_strict()));
    t.lambda = Lambda::E1Line;
    t.xs = t.ys = {Vec3{1, 0, 0}};
    return t;
}

Lambda detect_lambda(const Cone& cone) {
    if (cone.is_empty()) throw DomainError("not a duet cone");
    auto agree = [&](std::initializer_list<std::size_t> coords) {
        for (auto c : coords)
            if (!holds_everywhere(cone, agreement(c))) return false;
        return true;
    };
    if (!agree({0})) throw DomainError("not a duet cone");
    if (!agree({1, 3})) return Lambda::E1Line;
    if (!agree({2, 4})) return Lambda::E1E2Plane;
    return Lambda::UnionPlanes;
}

std::vector<IntRay> s_cone_constraints(Lambda lambda, const std::vector<Vec3>& seq, const Vec3& next, Side side) {
    std::vector<IntRay> out;
    IntRay fn = eval_functional(next, side);
    if (!seq.empty()) out.push_back(diff(fn, eval_functional(seq.back(), side)));
    MinQuery q{lambda, seq};
    q.removed.push_back(next);
    for (const auto& m : min_set(q)) out.push_back(diff(eval_functional(m, side), fn));
    return out;
}

namespace {

std::size_t count_outside(const std::vector<Vec3>& v, std::size_t r, Lambda l) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < r; ++i)
        if (!in_lambda(l, v[i])) ++c;
    return c;
}

std::string describe(const InTuneCone& t) {
    std::ostringstream os;
    os << "lambda=" << lambda_name(t.lambda) << " edges=" << t.cone.edge_count() << " xs=";
    for (auto& x : t.xs) os << "(" << x[0] << "," << x[1] << "," << x[2] << ")";
    os << " ys=";
    for (auto& y : t.ys) os << "(" << y[0] << "," << y[1] << "," << y[2] << ")";
    os << " edge list=";
    for (auto& e : t.cone.edges()) {
        os << "[";
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
        os << "]";
    }
    return os.str();
}

// Re-derive the bookkeeping of a child whose Lambda grew. Returns false when the child vanished.
bool retune(InTuneCone& c, Lambda parent, const RefineOptions& opt, std::size_t& repairs) {
    for (;;) {
        Lambda l = detect_lambda(c.cone);
        if (l == parent) return true;
        std::size_t r = c.xs.size();
        while (count_outside(c.xs, r, l) != count_outside(c.ys, r, l)) --r;
        std::vector<Vec3> xs, ys;
        for (std::size_t i = 0; i < r; ++i) {
            if (!in_lambda(l, c.xs[i])) xs.push_back(c.xs[i]);
            if (!in_lambda(l, c.ys[i])) ys.push_back(c.ys[i]);
        }
        c.lambda = l;
        c.xs = std::move(xs);
        c.ys = std::move(ys);
        std::vector<IntRay> eqs;
        for (std::size_t j = 0; j < c.xs.size(); ++j) {
            IntRay e = diff(eval_functional(c.xs[j], Side::F), eval_functional(c.ys[j], Side::G));
            if (!holds_everywhere(c.cone, e)) {
                eqs.push_back(e);
                eqs.push_back(negate(e));
            }
        }
        if (eqs.empty()) return true;
        if (opt.strict_p3) throw DomainError("in-tune violation: " + describe(c));
        ++repairs;
        c.cone = saturate(c.cone.add_halfspaces(eqs));
        if (c.cone.is_empty()) return false;
        parent = l;
    }
}

}  // namespace

RefineResult refine_cone(const InTuneCone& t, const RefineOptions& opt) {
    RefineResult res;
    if (t.cone.contained_in_diagonal()) {
        res.solo = true;
        res.children.push_back(t);
        return res;
    }
    auto mx = min_set({t.lambda, t.xs});
    auto my = min_set({t.lambda, t.ys});
    std::vector<std::vector<IntRay>> gy;
    for (const auto& y : my) gy.push_back(s_cone_constraints(t.lambda, t.ys, y, Side::G));
    for (const auto& x : mx) {
        Cone cx = t.cone.add_halfspaces(s_cone_constraints(t.lambda, t.xs, x, Side::F));
        if (cx.is_empty()) continue;
        IntRay fx = eval_functional(x, Side::F);
        for (std::size_t j = 0; j < my.size(); ++j) {
            const Vec3& y = my[j];
            auto cons = gy[j];
            IntRay e = diff(fx, eval_functional(y, Side::G));
            cons.push_back(e);
            cons.push_back(negate(e));
            Cone c = saturate(cx.add_halfspaces(cons));
            if (c.is_empty()) continue;
            ++res.computed;
            InTuneCone child{std::move(c), t.lambda, t.xs, t.ys};
            child.xs.push_back(x);
            child.ys.push_back(y);
            if (!retune(child, t.lambda, opt, res.p3_repairs)) continue;
            res.children.push_back(std::move(child));
        }
    }
    return res;
}

SymphonyReport run_symphony(const SymphonyOptions& opt) {
    if (opt.max_iter < 1) throw DomainError("max_iter must be at least 1");
    const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
    SymphonyReport rep;
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    };
    std::vector<InTuneCone> active{initial_cone()};
    std::unordered_set<std::string> solo_keys;
    auto record = [&](std::size_t i, std::size_t computed, std::size_t repairs) {
        IterationStats s{i, elapsed(), active.size(), rep.solos.size(), computed, repairs};
        rep.iterations.push_back(s);
        rep.total_active += active.size();
        if (opt.on_iteration) opt.on_iteration(s, active);
    };
    record(0, 1, 0);
    for (std::size_t it = 1; it <= opt.max_iter && !active.empty(); ++it) {
        std::vector<RefineResult> results(active.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex fail_mu;
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= active.size()) return;
                try {
                    results[i] = refine_cone(active[i], opt.refine);
                } catch (...) {
                    std::lock_guard lock(fail_mu);
                    if (!failure) failure = std::current_exception();
                    next = active.size();
                    return;
                }
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        if (failure) std::rethrow_exception(failure);
        std::vector<InTuneCone> next_active;
        std::unordered_set<std::string> seen;
        std::size_t computed = 0, repairs = 0;
        for (auto& r : results) {
            computed += r.computed;
            repairs += r.p3_repairs;
            for (auto& c : r.children) {
                std::string k = c.key();
                if (c.cone.contained_in_diagonal()) {
                    if (solo_keys.insert(std::move(k)).second) rep.solos.push_back(std::move(c));
                } else if (seen.insert(std::move(k)).second) {
                    next_active.push_back(std::move(c));
                }
            }
        }
        rep.total_computed += computed;
        rep.p3_repairs += repairs;
        active = std::move(next_active);
        record(it, computed, repairs);
    }
    rep.terminated = active.empty();
    rep.all_diagonal = rep.terminated && std::all_of(rep.solos.begin(), rep.solos.end(),
                                                     [](const InTuneCone& c) { return c.cone.contained_in_diagonal(); });
    return rep;
}

std::string stats_csv(const SymphonyReport& r) {
    std::ostringstream os;
    os << "iteration,elapsed_ms,active_cones,solo_cones\n";
    for (const auto& s : r.iterations) os << s.iteration << ',' << s.elapsed_ms << ',' << s.active << ',' << s.solo << '\n';
    return os.str();
}

}  // namespace flattori
