#include "cwb/repmod.hpp"

#include <chrono>
#include <deque>
#include <stdexcept>

#include "cwb/parallel.hpp"

namespace cwb {

std::string family_tag_str(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::VCD: return "vcd";
        case FamilyTag::VD: return "vd";
        case FamilyTag::VDprime: return "vdprime";
        case FamilyTag::Trivial: return "trivial";
    }
    return "?";
}

std::string ModuleFamily::str() const {
    switch (tag) {
        case FamilyTag::VCD: return "vcd(C=" + rat_str(C) + ", D=" + rat_str(D) + ")";
        case FamilyTag::VD: return "vd(D=" + rat_str(D) + ")";
        case FamilyTag::VDprime: return "vdprime(D=" + rat_str(D) + ")";
        case FamilyTag::Trivial: return "trivial";
    }
    return "?";
}

MPoly family_coeff(const ModuleFamily& family, int alpha, int gamma) {
    const Rat a = rat(alpha);
    switch (family.tag) {
        case FamilyTag::Trivial:
            return MPoly{};
        case FamilyTag::VCD:
            return P_lam() * (rat(alpha + gamma) + family.C) +
                   (P_del() + P_const(family.D)) * a;
        case FamilyTag::VD:
            if (gamma == 0) {
                MPoly base = P_lam() + P_del() + P_const(family.D);
                return base * base * a;
            }
            if (alpha + gamma == 0) return P_const(a);
            return P_lam() * rat(alpha + gamma) + (P_del() + P_const(family.D)) * a;
        case FamilyTag::VDprime:
            if (gamma == 0) return P_const(a);
            if (alpha + gamma == 0) {
                MPoly base = P_del() + P_const(family.D);
                return base * base * a;
            }
            return P_lam() * rat(alpha + gamma) + (P_del() + P_const(family.D)) * a;
    }
    return MPoly{};
}

StructureCoeffTable from_family(const ModuleFamily& family) {
    return {family.str(),
            [family](int alpha, int gamma) { return family_coeff(family, alpha, gamma); }};
}

std::map<int, MPoly> lambda_action(const StructureCoeffTable& table, int alpha,
                                   const GradedVector& v) {
    const std::map<int, MPoly> shift_del{{DEL, P_del() + P_lam()}};
    std::map<int, MPoly> out;
    for (const auto& [gamma, p] : v) {
        if (p.is_zero()) continue;
        MPoly contribution = p.substitute(shift_del) * table(alpha, gamma);
        if (contribution.is_zero()) continue;
        auto [it, fresh] = out.try_emplace(alpha + gamma, contribution);
        if (!fresh) {
            it->second += contribution;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

MPoly module_equation_defect(const StructureCoeffTable& table, int alpha, int beta, int gamma) {
    MPoly lhs = (P_lam() * rat(beta) - P_mu() * rat(alpha)) *
                table(alpha + beta, gamma).substitute({{LAM, P_lam() + P_mu()}});
    MPoly rhs = table(beta, gamma).substitute({{LAM, P_mu()}, {DEL, P_del() + P_lam()}}) *
                    table(alpha, beta + gamma) -
                table(alpha, gamma).substitute({{DEL, P_del() + P_mu()}}) *
                    table(beta, alpha + gamma).substitute({{LAM, P_mu()}});
    return lhs - rhs;
}

bool check_module_equation(const StructureCoeffTable& table, int alpha, int beta, int gamma) {
    return module_equation_defect(table, alpha, beta, gamma).is_zero();
}

ModuleSweepReport table_sweep(const StructureCoeffTable& table, int window) {
    if (window < 1) throw std::invalid_argument("module sweep needs window >= 1");
    auto start = std::chrono::steady_clock::now();
    const int side = 2 * window + 1;
    const long triples = static_cast<long>(side) * side * side;
    std::vector<std::optional<ModuleSweepFailure>> out(triples);
    parallel_for(triples, [&](long k) {
        int alpha = static_cast<int>(k / (static_cast<long>(side) * side)) - window;
        int beta = static_cast<int>((k / side) % side) - window;
        int gamma = static_cast<int>(k % side) - window;
        MPoly defect = module_equation_defect(table, alpha, beta, gamma);
        if (!defect.is_zero())
            out[k] = ModuleSweepFailure{alpha, beta, gamma, "defect " + defect.str()};
    });
    ModuleSweepReport report;
    report.triples_checked = static_cast<int>(triples);
    for (auto& f : out)
        if (f) report.failures.push_back(std::move(*f));
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

ModuleSweepReport family_sweep(const ModuleFamily& family, int window) {
    return table_sweep(from_family(family), window);
}

StructureCoeffTable rescale_basis(const StructureCoeffTable& table,
                                  std::function<Rat(int)> gauge) {
    auto coeff = table.coeff;
    return {table.name + ", rescaled",
            [coeff, gauge](int alpha, int gamma) {
                Rat num = gauge(gamma);
                Rat den = gauge(alpha + gamma);
                if (num == 0 || den == 0)
                    throw std::domain_error(
                        "zero gauge value at gamma=" +
                        std::to_string(num == 0 ? gamma : alpha + gamma));
                return coeff(alpha, gamma) * (num / den);
            }};
}

StructureCoeffTable shift_basis(const StructureCoeffTable& table, int n) {
    auto coeff = table.coeff;
    return {table.name + ", shifted by " + std::to_string(n),
            [coeff, n](int alpha, int gamma) { return coeff(alpha, gamma + n); }};
}

// t2 == r * t1 for a rational r, decided by the leading-coefficient
// ratio and confirmed by exact comparison. Requires both nonzero.
static std::optional<Rat> proportionality_ratio(const MPoly& t1, const MPoly& t2) {
    Rat r = t2.terms().rbegin()->second / t1.terms().rbegin()->second;
    if (t2 == t1 * r) return r;
    return std::nullopt;
}

static std::optional<IsoWitness> try_shift(const StructureCoeffTable& t1,
                                           const StructureCoeffTable& t2, int window, int n) {
    struct Edge {
        int to;
        Rat ratio;  // gauge(to) = gauge(from) / ratio
    };
    std::map<int, std::vector<Edge>> edges;
    for (int alpha = -window; alpha <= window; ++alpha) {
        for (int gamma = -window; gamma <= window; ++gamma) {
            MPoly a = t1(alpha, gamma + n);
            MPoly b = t2(alpha, gamma);
            if (a.is_zero() != b.is_zero()) return std::nullopt;
            if (a.is_zero()) continue;
            auto r = proportionality_ratio(a, b);
            if (!r) return std::nullopt;
            edges[gamma].push_back({alpha + gamma, *r});
            edges[alpha + gamma].push_back({gamma, rat(1) / *r});
        }
    }

    // Propagate gauge values component by component; each component is
    // anchored at its smallest node with value 1; overall component
    // scale is free, so an inconsistent cycle cannot be rescued and a
    // conflict rejects this shift.
    IsoWitness witness;
    witness.shift = n;
    for (int gamma = -2 * window; gamma <= 2 * window; ++gamma) witness.gauge[gamma] = rat(0);
    for (auto& [node, value] : witness.gauge) {
        if (value != 0) continue;
        value = rat(1);
        std::deque<int> queue{node};
        while (!queue.empty()) {
            int from = queue.front();
            queue.pop_front();
            auto it = edges.find(from);
            if (it == edges.end()) continue;
            for (const Edge& e : it->second) {
                Rat want = witness.gauge.at(from) / e.ratio;
                Rat& slot = witness.gauge.at(e.to);
                if (slot == 0) {
                    slot = want;
                    queue.push_back(e.to);
                } else if (slot != want) {
                    return std::nullopt;
                }
            }
        }
    }

    for (int alpha = -window; alpha <= window; ++alpha)
        for (int gamma = -window; gamma <= window; ++gamma)
            if (!(t2(alpha, gamma) * witness.gauge.at(alpha + gamma) ==
                  t1(alpha, gamma + n) * witness.gauge.at(gamma)))
                return std::nullopt;
    return witness;
}

std::optional<IsoWitness> is_isomorphic_diagonal(const StructureCoeffTable& t1,
                                                 const StructureCoeffTable& t2, int window) {
    if (window < 2) throw std::invalid_argument("isomorphism search needs window >= 2");
    std::vector<int> shifts{0};
    for (int n = 1; n <= window; ++n) {
        shifts.push_back(n);
        shifts.push_back(-n);
    }
    std::vector<std::optional<IsoWitness>> found(shifts.size());
    parallel_for(static_cast<long>(shifts.size()),
                 [&](long k) { found[k] = try_shift(t1, t2, window, shifts[k]); });
    for (auto& w : found)
        if (w) return w;
    return std::nullopt;
}

}  // namespace cwb
