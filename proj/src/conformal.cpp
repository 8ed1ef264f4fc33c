#include "cwb/conformal.hpp"

#include <chrono>
#include <optional>

#include "cwb/parallel.hpp"

namespace cwb {

static void image_add(LambdaImage& into, int index, const MPoly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = into.try_emplace(index, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) into.erase(it);
    }
}

static LambdaImage image_sub(const LambdaImage& a, const LambdaImage& b) {
    LambdaImage out = a;
    for (const auto& [i, p] : b) image_add(out, i, -p);
    return out;
}

static LambdaImage image_map(const LambdaImage& a, const std::map<int, MPoly>& bindings) {
    LambdaImage out;
    for (const auto& [i, p] : a) image_add(out, i, p.substitute(bindings));
    return out;
}

std::string image_str(const LambdaImage& img) {
    if (img.empty()) return "0";
    std::string out;
    for (const auto& [i, p] : img) {
        if (!out.empty()) out += "; ";
        out += "[" + std::to_string(i) + "] " + p.str();
    }
    return out;
}

ConformalAlgebra ConformalAlgebra::block() {
    return ConformalAlgebra("block", [](int alpha, int beta) {
        LambdaImage img;
        MPoly p = P_del() * rat(alpha) + P_lam() * rat(alpha + beta);
        if (!p.is_zero()) img.emplace(alpha + beta, std::move(p));
        return img;
    });
}

ConformalAlgebra ConformalAlgebra::one_generator(const Rat& c) {
    return ConformalAlgebra("one-generator", [c](int alpha, int beta) {
        LambdaImage img;
        if (alpha == 0 && beta == 0) img.emplace(0, P_del() + P_lam() * c);
        return img;
    });
}

ConformalAlgebra ConformalAlgebra::with_override(const ConformalAlgebra& base, int alpha, int beta,
                                                 LambdaImage img, std::string name) {
    auto table = base.table_;
    return ConformalAlgebra(std::move(name),
                            [table, alpha, beta, img](int a, int b) -> LambdaImage {
                                if (a == alpha && b == beta) return img;
                                return table(a, b);
                            });
}

LambdaImage ConformalAlgebra::basis_bracket(int alpha, int beta) const {
    LambdaImage img = table_(alpha, beta);
    for (auto it = img.begin(); it != img.end();)
        it = it->second.is_zero() ? img.erase(it) : std::next(it);
    return img;
}

LambdaImage ConformalAlgebra::bracket_at(const std::map<int, MPoly>& a,
                                         const std::map<int, MPoly>& b, const MPoly& nu) const {
    const std::map<int, MPoly> left_bind{{DEL, -nu}};
    const std::map<int, MPoly> right_bind{{DEL, P_del() + nu}};
    const std::map<int, MPoly> image_bind{{LAM, nu}};
    LambdaImage out;
    for (const auto& [alpha, p] : a) {
        if (p.is_zero()) continue;
        MPoly pl = p.substitute(left_bind);
        for (const auto& [beta, q] : b) {
            if (q.is_zero()) continue;
            MPoly qr = q.substitute(right_bind);
            for (const auto& [index, base] : basis_bracket(alpha, beta))
                image_add(out, index, pl * qr * base.substitute(image_bind));
        }
    }
    return out;
}

LambdaImage ConformalAlgebra::lambda_bracket(const ConformalElement& a,
                                             const ConformalElement& b) const {
    return bracket_at(a, b, P_lam());
}

bool ConformalAlgebra::check_sesqui(const ConformalElement& a, const ConformalElement& b) const {
    LambdaImage base = lambda_bracket(a, b);
    ConformalElement da, db;
    for (const auto& [i, p] : a) da[i] = P_del() * p;
    for (const auto& [i, p] : b) db[i] = P_del() * p;

    LambdaImage left = lambda_bracket(da, b);
    LambdaImage left_want;
    for (const auto& [i, p] : base) image_add(left_want, i, -(P_lam() * p));
    if (!(left == left_want)) return false;

    LambdaImage right = lambda_bracket(a, db);
    LambdaImage right_want;
    for (const auto& [i, p] : base) image_add(right_want, i, (P_del() + P_lam()) * p);
    return right == right_want;
}

LambdaImage ConformalAlgebra::skew_defect(const ConformalElement& a,
                                          const ConformalElement& b) const {
    LambdaImage forward = lambda_bracket(a, b);
    LambdaImage backward = lambda_bracket(b, a);
    // [b lam a] + [a at lam -> -lam-del b], where the substitution acts on
    // the whole image coefficient (total del).
    LambdaImage reflected = image_map(forward, {{LAM, -(P_lam() + P_del())}});
    LambdaImage defect = backward;
    for (const auto& [i, p] : reflected) image_add(defect, i, p);
    return defect;
}

bool ConformalAlgebra::check_skew(int alpha, int beta) const {
    return skew_defect(ConformalElement{{alpha, P_const(1)}}, ConformalElement{{beta, P_const(1)}})
        .empty();
}

bool ConformalAlgebra::check_skew(const ConformalElement& a, const ConformalElement& b) const {
    return skew_defect(a, b).empty();
}

LambdaImage ConformalAlgebra::jacobi_defect(const ConformalElement& a, const ConformalElement& b,
                                            const ConformalElement& c) const {
    LambdaImage inner_bc = bracket_at(b, c, P_mu());
    LambdaImage term1 = bracket_at(a, inner_bc, P_lam());
    LambdaImage inner_ac = bracket_at(a, c, P_lam());
    LambdaImage term2 = bracket_at(b, inner_ac, P_mu());
    LambdaImage inner_ab = bracket_at(a, b, P_lam());
    LambdaImage term3 = bracket_at(inner_ab, c, P_lam() + P_mu());
    return image_sub(term3, image_sub(term1, term2));
}

bool ConformalAlgebra::check_jacobi(int alpha, int beta, int gamma) const {
    return jacobi_defect(ConformalElement{{alpha, P_const(1)}},
                         ConformalElement{{beta, P_const(1)}},
                         ConformalElement{{gamma, P_const(1)}})
        .empty();
}

bool ConformalAlgebra::check_jacobi(const ConformalElement& a, const ConformalElement& b,
                                    const ConformalElement& c) const {
    return jacobi_defect(a, b, c).empty();
}

AxiomReport axiom_sweep(const ConformalAlgebra& algebra, int window) {
    if (window < 1) throw std::invalid_argument("axiom sweep needs window >= 1");
    auto start = std::chrono::steady_clock::now();
    AxiomReport report;
    const int side = 2 * window + 1;
    auto idx = [window](long k) { return static_cast<int>(k) - window; };

    const long pairs = static_cast<long>(side) * side;
    std::vector<std::optional<AxiomFailure>> sesqui_out(pairs), skew_out(pairs);
    parallel_for(pairs, [&](long k) {
        int alpha = idx(k / side), beta = idx(k % side);
        ConformalElement ea{{alpha, P_const(1)}}, eb{{beta, P_const(1)}};
        if (!algebra.check_sesqui(ea, eb))
            sesqui_out[k] = AxiomFailure{"sesquilinearity", alpha, beta, 0, "rewrite mismatch"};
        LambdaImage defect = algebra.skew_defect(ea, eb);
        if (!defect.empty())
            skew_out[k] = AxiomFailure{"skew", alpha, beta, 0, image_str(defect)};
    });
    report.sesqui_checked = static_cast<int>(pairs);
    report.skew_checked = static_cast<int>(pairs);

    const long triples = pairs * side;
    std::vector<std::optional<AxiomFailure>> jacobi_out(triples);
    parallel_for(triples, [&](long k) {
        int alpha = idx(k / (static_cast<long>(side) * side));
        int beta = idx((k / side) % side);
        int gamma = idx(k % side);
        LambdaImage defect = algebra.jacobi_defect(ConformalElement{{alpha, P_const(1)}},
                                                   ConformalElement{{beta, P_const(1)}},
                                                   ConformalElement{{gamma, P_const(1)}});
        if (!defect.empty())
            jacobi_out[k] = AxiomFailure{"jacobi", alpha, beta, gamma, image_str(defect)};
    });
    report.jacobi_checked = static_cast<int>(triples);

    for (auto& f : sesqui_out)
        if (f) report.failures.push_back(std::move(*f));
    for (auto& f : skew_out)
        if (f) report.failures.push_back(std::move(*f));
    for (auto& f : jacobi_out)
        if (f) report.failures.push_back(std::move(*f));
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

bool bridge_check(const ConformalAlgebra& algebra, int alpha, int beta, TruncationPolicy pol,
                  int lambda_cap) {
    return lambda_product(alpha, beta, pol, lambda_cap) == algebra.basis_bracket(alpha, beta);
}

BridgeReport bridge_sweep(const ConformalAlgebra& algebra, int window, TruncationPolicy pol,
                          int lambda_cap, int max_j) {
    auto start = std::chrono::steady_clock::now();
    BridgeReport report;
    const int side = 2 * window + 1;
    const long pairs = static_cast<long>(side) * side;
    std::vector<std::string> fail_out(pairs);
    parallel_for(pairs, [&](long k) {
        int alpha = static_cast<int>(k / side) - window;
        int beta = static_cast<int>(k % side) - window;
        std::string& fail = fail_out[k];
        LambdaImage via_residue = lambda_product(alpha, beta, pol, lambda_cap);
        LambdaImage via_table = algebra.basis_bracket(alpha, beta);
        if (!(via_residue == via_table))
            fail += "lambda product mismatch at (" + std::to_string(alpha) + ", " +
                    std::to_string(beta) + "): residue gives " + image_str(via_residue) +
                    ", table gives " + image_str(via_table) + "\n";
        // Closed forms of the first two j-products, then nothing.
        for (int j = 0; j <= max_j; ++j) {
            TruncatedDistribution got = j_product(alpha, beta, j, pol);
            bool ok;
            if (j == 0) {
                TruncatedDistribution want =
                    P_const(alpha) * generator_w_derivative(alpha + beta, 1, pol);
                ok = TruncatedDistribution::equal_on_common_window(got, want);
            } else if (j == 1) {
                TruncatedDistribution want =
                    P_const(alpha + beta) * generator_distribution(alpha + beta, pol, Axis::W);
                ok = TruncatedDistribution::equal_on_common_window(got, want);
            } else {
                ok = got.zero_on_exact_window();
            }
            if (!ok)
                fail += "j-product mismatch at (" + std::to_string(alpha) + ", " +
                        std::to_string(beta) + "), j=" + std::to_string(j) + "\n";
        }
    });
    report.pairs_checked = static_cast<int>(pairs);
    report.jproducts_checked = static_cast<int>(pairs) * (max_j + 1);
    for (auto& f : fail_out)
        if (!f.empty()) report.failures.push_back(std::move(f));
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

}  // namespace cwb
