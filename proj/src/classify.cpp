#include "cwb/classify.hpp"

#include <algorithm>

namespace cwb {

static bool in_win(int x, int window) { return -window <= x && x <= window; }

static Rat rat_pow(const Rat& x, int n) {
    Rat out = rat(1);
    for (int i = 0; i < n; ++i) out *= x;
    return out;
}

static std::string pair_str(int alpha, int gamma) {
    return "(" + std::to_string(alpha) + ", " + std::to_string(gamma) + ")";
}

static std::string triple_str(int alpha, int beta, int gamma) {
    return "(" + std::to_string(alpha) + ", " + std::to_string(beta) + ", " +
           std::to_string(gamma) + ")";
}

ZeroSet zero_propagate(const std::set<IndexPair>& seeds, int window, MirrorBound bound) {
    if (window < 1) throw std::invalid_argument("zero propagation needs window >= 1");
    for (const auto& [a, g] : seeds)
        if (!in_win(a, window) || !in_win(g, window))
            throw std::invalid_argument("seed " + pair_str(a, g) + " outside window");
    ZeroSet z{window, seeds};
    const int upper_off = bound == MirrorBound::Wide ? 1 : -1;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> row1, rowm1;
        for (const auto& [a, g] : z.known) {
            if (a == 1) row1.push_back(g);
            if (a == -1) rowm1.push_back(g);
        }
        auto add = [&](int a, int g) {
            if (in_win(a, window) && in_win(g, window) && z.known.insert({a, g}).second)
                changed = true;
        };
        for (int g0 : row1)
            for (int a = -window; a <= window; ++a)
                for (int g = -window; g <= g0; ++g)
                    if (a + g >= g0 + 1) add(a, g);
        for (int g0 : rowm1)
            for (int a = -window; a <= window; ++a)
                for (int g = g0; g <= window; ++g)
                    if (a + g <= g0 + upper_off) add(a, g);
        if (!row1.empty()) {
            auto [lo, hi] = std::minmax_element(row1.begin(), row1.end());
            for (int g = *lo; g <= *hi; ++g) add(1, g);
        }
        if (!rowm1.empty()) {
            auto [lo, hi] = std::minmax_element(rowm1.begin(), rowm1.end());
            for (int g = *lo; g <= *hi; ++g) add(-1, g);
        }
    }
    return z;
}

ZeroSet trivial_closure(const std::set<IndexPair>& seeds, int window) {
    if (window < 1) throw std::invalid_argument("closure needs window >= 1");
    for (const auto& [a, g] : seeds)
        if (!in_win(a, window) || !in_win(g, window))
            throw std::invalid_argument("seed " + pair_str(a, g) + " outside window");
    ZeroSet z{window, seeds};
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<int> columns;
        for (const auto& [a, g] : z.known)
            if (a != 0) columns.insert(g);
        for (int g : columns)
            for (int a = -window; a <= window; ++a)
                if (z.known.insert({a, g}).second) changed = true;
        for (int a = -window; a <= window; ++a) {
            for (int b = -window; b <= window; ++b) {
                if (a == 0 && b == 0) continue;
                if (!in_win(a + b, window)) continue;
                for (int g = -window; g <= window; ++g) {
                    if (z.contains(a + b, g)) continue;
                    bool first = z.contains(b, g) ||
                                 (in_win(b + g, window) && z.contains(a, b + g));
                    bool second = z.contains(a, g) ||
                                  (in_win(a + g, window) && z.contains(b, a + g));
                    if (first && second) {
                        z.known.insert({a + b, g});
                        changed = true;
                    }
                }
            }
        }
    }
    return z;
}

std::string case_tag_str(CaseTag tag) {
    switch (tag) {
        case CaseTag::TruncatedSubmodule: return "truncated-submodule";
        case CaseTag::Trivial: return "trivial";
        case CaseTag::CompleteGraded: return "complete-graded";
    }
    return "?";
}

CaseTag detect_case(const StructureCoeffTable& table, int window) {
    if (window < 1) throw std::invalid_argument("case detection needs window >= 1");
    for (int g0 = -window; g0 < window; ++g0)
        if (table(1, g0).is_zero() && table(-1, g0 + 1).is_zero())
            return CaseTag::TruncatedSubmodule;
    for (int a = -window; a <= window; ++a) {
        if (a == 0) continue;
        for (int g = -window; g <= window; ++g)
            if (table(a, g).is_zero()) return CaseTag::Trivial;
    }
    return CaseTag::CompleteGraded;
}

HSolution solve_h(const StructureCoeffTable& table, int window) {
    if (window < 1) throw std::invalid_argument("h extraction needs window >= 1");
    HSolution out;
    for (int g = -window; g <= window; ++g) {
        MPoly f = table(0, g);
        std::string who = "f_{0," + std::to_string(g) + "}";
        if (f.degree_in(DEL) >= 1) throw NotAModule(who + " depends on del");
        if (f.degree_in(MU) >= 1 || f.degree_in(S) >= 1)
            throw NotAModule(who + " uses a variable other than lam");
        if (f.degree_in(LAM) > 1) throw NotAModule(who + " is not linear in lam");
        if (!f.coeff_in(LAM, 0).is_zero()) throw NotAModule(who + " has a constant term");
    }
    out.steps.push_back("row alpha = 0 is del-free and linear in lam with no constant term");
    for (int g = -window; g < window; ++g)
        if (!(table(0, g + 1) == table(0, g) + P_lam()))
            throw NotAModule("step law f_{0,gamma+1} = f_{0,gamma} + lam fails at gamma = " +
                             std::to_string(g));
    out.steps.push_back("step law f_{0,gamma+1} = f_{0,gamma} + lam holds on the window");
    out.C = table(0, 0).coeff_in(LAM, 1).as_constant();
    out.steps.push_back("f_{0,gamma} = (gamma + C) lam with C = " + rat_str(out.C));
    return out;
}

std::set<int> degree_admissible(int alpha, int gamma, const Rat& C, int max_n) {
    if (alpha == 0) throw std::invalid_argument("degree equation needs alpha != 0");
    std::set<int> out;
    const Rat x = rat(alpha + gamma) + C;
    const Rat a = rat(alpha);
    for (int n = 0; n <= max_n; ++n)
        if (a * rat_pow(x, n) == x * rat_pow(a, n)) out.insert(n);
    return out;
}

std::optional<MPoly> characteristic_form_check(const MPoly& f, int alpha, int gamma,
                                               const Rat& C) {
    const Rat x = rat(alpha + gamma) + C;
    if (alpha != 0) {
        MPoly F = f.substitute({{LAM, MPoly{}}, {DEL, P_s() * (rat(1) / rat(alpha))}});
        MPoly s_here = P_lam() * x + P_del() * rat(alpha);
        if (F.substitute({{S, s_here}}) == f) return F;
        return std::nullopt;
    }
    if (f.degree_in(DEL) >= 1 || f.degree_in(MU) >= 1 || f.degree_in(S) >= 1)
        return std::nullopt;
    if (x != 0) {
        MPoly F = f.substitute({{LAM, P_s() * (rat(1) / x)}});
        if (F.substitute({{S, P_lam() * x}}) == f) return F;
        return std::nullopt;
    }
    if (f.total_degree() <= 0) return f;
    return std::nullopt;
}

std::map<int, Rat> solve_P_cocycle(const std::map<IndexPair, Rat>& P, int window) {
    if (window < 1) throw std::invalid_argument("gauge extraction needs window >= 1");
    auto at = [&](int a, int g) -> const Rat& {
        auto it = P.find({a, g});
        if (it == P.end())
            throw std::invalid_argument("P missing entry " + pair_str(a, g));
        if (it->second == 0) throw std::invalid_argument("P zero at " + pair_str(a, g));
        return it->second;
    };
    for (int a = -window; a <= window; ++a)
        for (int b = -window; b <= window; ++b) {
            if (!in_win(a + b, window)) continue;
            for (int g = -window; g <= window; ++g) {
                if (!in_win(b + g, window)) continue;
                if (at(a + b, g) != at(a, b + g) * at(b, g))
                    throw CocycleViolation(a, b, g,
                                           "multiplicative relation fails at " +
                                               triple_str(a, b, g));
            }
        }
    std::map<int, Rat> gauge;
    gauge[0] = rat(1);
    for (int g = 0; g < window; ++g) gauge[g + 1] = at(1, g) * gauge[g];
    for (int g = 0; g > -window; --g) gauge[g - 1] = gauge[g] / at(1, g - 1);
    for (int a = -window; a <= window; ++a)
        for (int g = -window; g <= window; ++g) {
            if (!in_win(a + g, window)) continue;
            if (at(a, g) * gauge[g] != gauge[a + g])
                throw CocycleViolation(a, 0, g,
                                       "gauge does not reproduce P at " + pair_str(a, g));
        }
    return gauge;
}

Rat solve_K_system(const std::map<IndexPair, Rat>& K, const Rat& C, int window) {
    if (window < 1) throw std::invalid_argument("constant extraction needs window >= 1");
    if (K.empty()) throw NotAModule("no entries to extract the constant from");
    auto has = [&](int a, int g) { return K.count({a, g}) != 0; };
    auto at = [&](int a, int g) { return K.at({a, g}); };
    for (int a = -window; a <= window; ++a) {
        if (a == 0) continue;
        for (int b = -window; b <= window; ++b) {
            if (b == 0) continue;
            for (int g = -window; g <= window; ++g) {
                bool shared = has(a, b + g) && has(b, g) && has(b, a + g);
                if (a + b != 0 && shared && has(a + b, g)) {
                    Rat lhs = rat(a + b) * at(a + b, g);
                    Rat rhs = rat(a) * at(a, b + g) + (rat(a + b + g) + C) * at(b, g) -
                              (rat(a + g) + C) * at(b, a + g);
                    if (lhs != rhs)
                        throw NotAModule("weighted constant relation fails at " +
                                         triple_str(a, b, g));
                }
                if (shared && has(a, g)) {
                    if (at(a, b + g) + at(b, g) != at(b, a + g) + at(a, g))
                        throw NotAModule("exchange relation for constants fails at " +
                                         triple_str(a, b, g));
                }
            }
        }
    }
    const Rat D = K.begin()->second;
    for (const auto& [key, value] : K)
        if (value != D)
            throw NotAModule("constants disagree: K" + pair_str(key.first, key.second) +
                             " = " + rat_str(value) + " vs " + rat_str(D));
    return D;
}

namespace {

struct Fail : std::exception {
    std::string kind, message;
    Fail(std::string k, std::string m) : kind(std::move(k)), message(std::move(m)) {}
    const char* what() const noexcept override { return message.c_str(); }
};

}  // namespace

static DeductionReport classify_inner(const StructureCoeffTable& table, int window,
                                      int max_degree, DeductionReport& rep) {
    auto step = [&](std::string s) { rep.steps.push_back(std::move(s)); };

    rep.case_tag = detect_case(table, window);
    if (rep.case_tag == CaseTag::TruncatedSubmodule) {
        int g0 = -window;
        while (!(table(1, g0).is_zero() && table(-1, g0 + 1).is_zero())) ++g0;
        step("f_{1," + std::to_string(g0) + "} and f_{-1," + std::to_string(g0 + 1) +
             "} both vanish: truncated-submodule case");
        ZeroSet closure = trivial_closure({{1, g0}, {-1, g0 + 1}}, window);
        const long total = static_cast<long>(2 * window + 1) * (2 * window + 1);
        step("closure from the seed pair forces " + std::to_string(closure.known.size()) +
             " of " + std::to_string(total) + " window entries to zero");
        bool all_zero = true;
        for (int a = -window; a <= window && all_zero; ++a)
            for (int g = -window; g <= window && all_zero; ++g)
                if (!table(a, g).is_zero()) all_zero = false;
        if (all_zero) {
            step("input table is identically zero on the window");
        } else {
            step("input table is not identically zero, so it does not satisfy the "
                 "functional equation itself; the zero pattern alone forces triviality");
        }
        rep.family = ModuleFamily::trivial();
        rep.ok = true;
        return rep;
    }
    if (rep.case_tag == CaseTag::Trivial) {
        IndexPair seed{0, 0};
        for (int a = -window; a <= window && seed.first == 0; ++a) {
            if (a == 0) continue;
            for (int g = -window; g <= window; ++g)
                if (table(a, g).is_zero()) {
                    seed = {a, g};
                    break;
                }
        }
        step("f_" + pair_str(seed.first, seed.second) +
             " vanishes with alpha != 0 and no truncation pair exists");
        ZeroSet closure = trivial_closure({seed}, window);
        const long total = static_cast<long>(2 * window + 1) * (2 * window + 1);
        step("closure from this one entry forces " + std::to_string(closure.known.size()) +
             " of " + std::to_string(total) + " window entries to zero: the module is trivial");
        step("input table has nonzero entries, so it does not satisfy the functional "
             "equation itself; the forced conclusion is reported");
        rep.family = ModuleFamily::trivial();
        rep.ok = true;
        return rep;
    }

    // Functional equation on every triple whose five lookups stay in
    // the window.
    int checked = 0;
    for (int a = -window; a <= window; ++a)
        for (int b = -window; b <= window; ++b) {
            if (!in_win(a + b, window)) continue;
            for (int g = -window; g <= window; ++g) {
                if (!in_win(b + g, window) || !in_win(a + g, window)) continue;
                MPoly defect = module_equation_defect(table, a, b, g);
                if (!defect.is_zero())
                    throw Fail("not-a-module", "functional equation fails at " +
                                                   triple_str(a, b, g) + ": defect " +
                                                   defect.str());
                ++checked;
            }
        }
    rep.checked_triples = checked;
    step("functional equation verified on " + std::to_string(checked) + " window triples");

    HSolution h = solve_h(table, window);
    for (auto& s : h.steps) step(std::move(s));
    rep.C_raw = h.C;

    if (h.C > rat(1000000) || h.C < rat(-1000000))
        throw Fail("not-a-module", "recovered C = " + rat_str(h.C) +
                                       " is outside the supported range");

    // Reduce every alpha != 0 entry to a univariate polynomial in
    // s = (alpha+gamma+C) lam + alpha del and record its degree.
    std::map<IndexPair, MPoly> F;
    for (int a = -window; a <= window; ++a) {
        if (a == 0) continue;
        for (int g = -window; g <= window; ++g) {
            auto Fag = characteristic_form_check(table(a, g), a, g, h.C);
            if (!Fag)
                throw Fail("not-a-module", "entry " + pair_str(a, g) +
                                               " is not constant along its characteristic "
                                               "lines");
            int n = std::max(Fag->degree_in(S), 0);
            if (n > max_degree)
                throw Fail("ansatz-degree-exceeded",
                           "entry " + pair_str(a, g) + " needs degree " + std::to_string(n) +
                               " but the bound is " + std::to_string(max_degree));
            if (n >= 1 && degree_admissible(a, g, h.C, n).count(n) == 0)
                throw Fail("not-a-module", "degree " + std::to_string(n) + " at " +
                                               pair_str(a, g) +
                                               " fails the degree equation");
            F.emplace(IndexPair{a, g}, std::move(*Fag));
        }
    }
    step("all entries reduced to univariate characteristic forms within degree " +
         std::to_string(max_degree));

    // Degree profile against the two special lines gamma + C = 0 and
    // alpha + gamma + C = 0.
    const bool c_integral = is_integer(h.C);
    const long c_line = c_integral ? floor_long(h.C) : 0;
    std::set<IndexPair> line_g, line_m, deg2, deg0;
    for (const auto& [key, Fag] : F) {
        auto [a, g] = key;
        if (c_integral && g == -c_line) line_g.insert(key);
        if (c_integral && a + g == -c_line) line_m.insert(key);
        int n = std::max(Fag.degree_in(S), 0);
        if (n == 2) deg2.insert(key);
        if (n == 0) deg0.insert(key);
    }
    FamilyTag famtag;
    if (deg2.empty() && deg0.empty()) {
        famtag = FamilyTag::VCD;
        step("no squared or constant entries: linear family");
    } else if (deg2 == line_g && deg0 == line_m) {
        famtag = FamilyTag::VD;
        step("squared entries exactly on gamma + C = 0 and constants exactly on "
             "alpha + gamma + C = 0");
    } else if (deg2 == line_m && deg0 == line_g) {
        famtag = FamilyTag::VDprime;
        step("squared entries exactly on alpha + gamma + C = 0 and constants exactly on "
             "gamma + C = 0");
    } else {
        throw Fail("not-a-module",
                   "degree profile matches no family: " + std::to_string(deg2.size()) +
                       " squared and " + std::to_string(deg0.size()) +
                       " constant entries do not fill the special lines");
    }
    if (c_integral && (line_g.empty() || line_m.empty())) {
        rep.window_limited = true;
        step("a special line falls outside the window; the family tag is what the window "
             "supports");
    }

    // Per-entry scalar P, the gauge part of F.
    std::map<IndexPair, Rat> P;
    for (const auto& [key, Fag] : F) {
        auto [a, g] = key;
        Rat p;
        if (deg2.count(key)) {
            p = Fag.coeff_in(S, 2).as_constant() * rat(a);
        } else if (deg0.count(key)) {
            p = Fag.coeff_in(S, 0).as_constant() / rat(a);
        } else {
            p = Fag.coeff_in(S, 1).as_constant();
        }
        P[key] = p;
    }
    for (int g = -window; g <= window; ++g) P[{0, g}] = rat(1);
    std::map<int, Rat> gauge;
    try {
        gauge = solve_P_cocycle(P, window);
    } catch (const CocycleViolation& e) {
        throw Fail("not-a-module", e.what());
    }
    step("gauge solved from the multiplicative system, anchored at C_0 = 1");

    // Extend the gauge to [-2N, 2N] through P itself, so that the
    // reconstruction below covers the whole window.
    for (int m = window + 1; m <= 2 * window; ++m)
        for (int sign : {1, -1}) {
            int target = sign * m;
            bool have = false;
            for (int g = -window; g <= window; ++g) {
                int a = target - g;
                if (!in_win(a, window)) continue;
                Rat want = P.at({a, g}) * gauge.at(g);
                if (!have) {
                    gauge[target] = want;
                    have = true;
                } else if (gauge.at(target) != want) {
                    throw Fail("not-a-module", "gauge extension disagrees at gamma = " +
                                                   std::to_string(target));
                }
            }
        }
    rep.gauge = gauge;

    // De-gauge and extract the constants.
    std::map<IndexPair, Rat> K;
    std::map<IndexPair, std::pair<Rat, Rat>> quad;  // H and T per squared entry
    for (const auto& [key, Fag] : F) {
        auto [a, g] = key;
        MPoly Fhat = Fag * (rat(1) / P.at(key));
        if (deg2.count(key)) {
            quad[key] = {Fhat.coeff_in(S, 1).as_constant(),
                         Fhat.coeff_in(S, 0).as_constant() / rat(a)};
        } else if (deg0.count(key)) {
            if (!(Fhat == P_const(rat(a))))
                throw Fail("not-a-module", "constant entry at " + pair_str(a, g) +
                                               " does not reduce to alpha");
        } else {
            MPoly rest = Fhat - P_s();
            if (rest.total_degree() > 0)
                throw Fail("not-a-module", "entry " + pair_str(a, g) +
                                               " does not reduce to s + alpha K");
            K[key] = rest.is_zero() ? rat(0) : rest.as_constant() / rat(a);
        }
    }
    Rat D;
    try {
        D = solve_K_system(K, h.C, window);
    } catch (const NotAModule& e) {
        throw Fail("not-a-module", e.what());
    }
    for (const auto& [key, ht] : quad) {
        if (ht.first != rat(2) * D || ht.second != D * D)
            throw Fail("not-a-module", "squared entry at " + pair_str(key.first, key.second) +
                                           " does not complete the square with D = " +
                                           rat_str(D));
    }
    rep.D = D;
    step("constant D = " + rat_str(D) + " (common to " + std::to_string(K.size()) +
         " entries" + (quad.empty() ? "" : ", square completion confirmed") + ")");

    // Family, representative C, shift witness, and full reconstruction.
    rep.shift = floor_long(h.C);
    rep.C_rep = h.C - rat(rep.shift);
    ModuleFamily family = famtag == FamilyTag::VCD ? ModuleFamily::vcd(rep.C_rep, D)
                          : famtag == FamilyTag::VD ? ModuleFamily::vd(D)
                                                    : ModuleFamily::vdprime(D);
    rep.family = family;
    step("family " + family.str() + " with shift " + std::to_string(rep.shift) +
         " and C representative " + rat_str(rep.C_rep));

    int rebuilt = 0;
    for (int a = -window; a <= window; ++a)
        for (int g = -window; g <= window; ++g) {
            MPoly want = family_coeff(family, a, static_cast<int>(g + rep.shift)) *
                         (gauge.at(a + g) / gauge.at(g));
            if (!(want == table(a, g)))
                throw Fail("internal", "reconstruction mismatch at " + pair_str(a, g));
            ++rebuilt;
        }
    rep.reconstructed_entries = rebuilt;
    step("family transported by shift and gauge reproduces all " + std::to_string(rebuilt) +
         " window entries");
    rep.ok = true;
    return rep;
}

DeductionReport classify(const StructureCoeffTable& table, int window, int max_degree) {
    if (window < 2) throw std::invalid_argument("classification needs window >= 2");
    if (max_degree < 1) throw std::invalid_argument("degree bound must be at least 1");
    DeductionReport rep;
    try {
        return classify_inner(table, window, max_degree, rep);
    } catch (const Fail& f) {
        rep.ok = false;
        rep.error = f.message;
        rep.error_kind = f.kind;
        rep.steps.push_back("stopped: " + f.message);
        return rep;
    } catch (const NotAModule& e) {
        rep.ok = false;
        rep.error = e.what();
        rep.error_kind = "not-a-module";
        rep.steps.push_back("stopped: " + rep.error);
        return rep;
    }
}

}  // namespace cwb
