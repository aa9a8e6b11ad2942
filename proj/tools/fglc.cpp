// fglc: command line front end for the fgl headers.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "embedded_fixtures.hpp"
#include "fgl/fgl.hpp"

using nlohmann::json;

namespace {

enum Exit { ok = 0, mismatch = 1, usage = 2, invariant = 3 };

struct Output {
    std::ostringstream text;
    json doc = json::object();
    int status = ok;
};

json poly_entry(const std::string& name, const fgl::Poly& f)
{
    return {{"name", name}, {"poly", f.to_string()}, {"terms", f.to_json()}};
}

void emit_poly(Output& out, const std::string& name, const fgl::Poly& f)
{
    out.text << name << " = " << f.to_string() << "\n";
    out.doc["values"].push_back(poly_entry(name, f));
}

fgl::Series2<fgl::Fp> reduce_series(const fgl::Series2<fgl::Rational>& f, std::uint32_t p)
{
    fgl::Series2<fgl::Fp> out(f.truncation(), fgl::Fp(0, p));
    for (unsigned d = 0; d <= f.truncation(); ++d)
        for (unsigned i = 0; i <= d; ++i)
            out.at(i, d - i) = fgl::Fp::from_rational(f.coeff(i, d - i), p);
    return out;
}

std::vector<std::pair<long, long>> parse_pairs(const std::string& text)
{
    // "k,l;k,l;..."
    std::vector<std::pair<long, long>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw fgl::DomainError("pair '" + item + "' is not of the form k,l");
        try {
            out.emplace_back(std::stol(item.substr(0, comma)), std::stol(item.substr(comma + 1)));
        } catch (const std::logic_error&) {
            throw fgl::DomainError("pair '" + item + "' is not of the form k,l");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Formal group law computations: BP, Morava K-theory, Abel law, p-typical kernel"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");

    unsigned prime = 2, height = 1, degree = 8, upto = 4, weight = 20, nmax = 0, i = 1, j = 1, k = 1;
    std::string method, kind = "wp", poly_text, pairs_text = "2,1;3,1;3,-1;5,2", fixtures_path;
    std::vector<unsigned> kseq;
    int leading = -1, log_degree = -1;
    bool in_a = false, show_log = false, mod2 = false, topological = false;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        auto* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };
    auto prime_opt = [&](CLI::App* s, bool required) {
        auto* o = s->add_option("--prime,-p", prime, "Prime p")->check(CLI::PositiveNumber);
        if (required)
            o->required();
    };

    auto* bp = app.add_subcommand("bp", "Brown-Peterson logarithm and formal group law")->require_subcommand(1);
    bp->fallthrough();
    auto* bp_log = leaf(bp, "log", "Logarithm coefficients l_1..l_n");
    prime_opt(bp_log, true);
    bp_log->add_option("--upto", upto, "Largest n")->required();
    bp_log->add_option("--method", method, "recursive or closed")->check(CLI::IsMember({"recursive", "closed"}));
    auto* bp_coeff = leaf(bp, "coeff", "Coefficient alpha_ij of the BP law, or the leading alpha relation");
    prime_opt(bp_coeff, true);
    bp_coeff->add_option("--i", i);
    bp_coeff->add_option("--j", j);
    bp_coeff->add_option("--leading", leading, "n: relation between alpha_{kp^n,(p-k)p^n} and v_{n+1}");
    bp_coeff->add_option("--k", k, "k for --leading");
    auto* bp_express = leaf(bp, "express-v", "Hazewinkel generators through alpha_{kp^m,(p-k)p^m}");
    prime_opt(bp_express, true);
    bp_express->add_option("--upto", upto, "Largest n")->required();
    bp_express->add_option("--k", kseq, "k_0 k_1 ... (default all 1)");

    auto* mor = app.add_subcommand("morava", "Morava K-theory formal group law")->require_subcommand(1);
    mor->fallthrough();
    auto* mor_fgl = leaf(mor, "fgl", "F(x,y) mod p to a total degree");
    prime_opt(mor_fgl, true);
    mor_fgl->add_option("--height,-s", height)->check(CLI::PositiveNumber)->required();
    mor_fgl->add_option("--degree,-N", degree)->required();
    mor_fgl->add_option("--method", method, "ravenel, formula or log")
        ->check(CLI::IsMember({"ravenel", "formula", "log"}));
    mor_fgl->add_flag("--log", show_log, "Print the rational logarithm instead");
    auto* mor_witt = leaf(mor, "witt", "Witt symmetric functions W^(1)..W^(n) in x, y");
    mor_witt->add_option("--upto", upto)->required();
    auto* mor_approx = leaf(mor, "approx", "Check the low-degree approximations");
    mor_approx->add_option("--kind", kind, "wp or bv")->check(CLI::IsMember({"wp", "bv"}));
    prime_opt(mor_approx, false);
    mor_approx->add_option("--height,-s", height)->check(CLI::PositiveNumber)->required();
    mor_approx->add_option("--degree,-N", degree, "Truncation (default: enough for the statement)");

    auto* ab = app.add_subcommand("abel", "Two-valued (Abel) formal group law")->require_subcommand(1);
    ab->fallthrough();
    auto* ab_coeffs = leaf(ab, "coeffs", "Coefficients a_1..a_n");
    ab_coeffs->add_option("--upto", upto)->required();
    ab_coeffs->add_option("--method", method, "assoc or closed")->check(CLI::IsMember({"assoc", "closed"}));
    auto* ab_log = leaf(ab, "log", "Logarithm coefficients m_1..m_n");
    ab_log->add_option("--upto", upto)->required();
    ab_log->add_option("--method", method, "integral, product or uv")
        ->check(CLI::IsMember({"integral", "product", "uv"}));
    ab_log->add_flag("--in-uv", in_a, "Keep the u, v form (method uv)");
    auto* ab_exp = leaf(ab, "exp", "Exponential coefficients in u, v");
    ab_exp->add_option("--upto", upto)->required();
    ab_exp->add_flag("--in-a", in_a, "Rewrite in a1, a2");
    auto* ab_mem = leaf(ab, "membership", "Sample f(kt, lt) for integrality over Z[1/(k-l)]");
    ab_mem->add_option("--poly", poly_text, "Symmetric polynomial in a, b")->required();
    ab_mem->add_option("--pairs", pairs_text, "k,l;k,l;...");

    auto* pt = app.add_subcommand("ptypical", "p-typical Abel law and its classifying map")->require_subcommand(1);
    pt->fallthrough();
    auto* pt_img = leaf(pt, "images", "Images of v_1..v_n in Q[a1, a2]");
    prime_opt(pt_img, false);
    pt_img->add_option("--upto", upto);
    pt_img->add_option("--log", log_degree, "Print the p-typical logarithm to this degree instead");
    auto* pt_ker = leaf(pt, "kernel", "Kernel of BP_* -> Z_(p)[a1, a2] by weight");
    prime_opt(pt_ker, false);
    pt_ker->add_option("--max-weight,--weight", weight, "Largest weight");
    pt_ker->add_option("--nmax", nmax, "Largest v_n (0: all that fit)");
    pt_ker->add_flag("--mod2", mod2, "Add the mod 2 presentation and the v2^7 witness");
    pt_ker->add_flag("--topological", topological, "Label by topological degree 2w");
    auto* pt_gen = leaf(pt, "genfun", "Generating function of the conjectured quotient");
    pt_gen->add_option("--upto", upto, "Truncation in t");
    pt_gen->add_flag("--topological", topological, "Exponents in topological degree 2w");
    auto* pt_conj = leaf(pt, "conjecture", "Rank and leading-shape comparison by weight");
    pt_conj->add_option("--max-weight,--weight", weight);
    pt_conj->add_option("--nmax", nmax);

    auto* repro = app.add_subcommand("reproduce", "Check every fixture and print the report");
    repro->fallthrough();
    repro->add_option("--fixtures", fixtures_path, "Fixture file (default: the embedded table)");
    repro->add_option("--weight", weight, "Largest weight for the conjecture notes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    Output out;
    const auto deg = [&](unsigned w) { return topological ? 2 * w : w; };
    try {
        if (bp_log->parsed()) {
            const auto vars = fgl::bp_vars(prime, upto);
            out.doc["prime"] = prime;
            if (method == "closed")
                for (unsigned n = 1; n <= upto; ++n)
                    emit_poly(out, "l_" + std::to_string(n), fgl::bp_log_closed(prime, n, vars));
            else {
                const auto l = fgl::bp_log_recursive(prime, upto, vars);
                for (unsigned n = 1; n <= upto; ++n)
                    emit_poly(out, "l_" + std::to_string(n), l[n - 1]);
            }
        } else if (bp_coeff->parsed()) {
            out.doc["prime"] = prime;
            if (leading >= 0) {
                const auto r = fgl::leading_alpha_relation(prime, static_cast<unsigned>(leading), k);
                const std::string name = fgl::alpha_name(r.i, r.j);
                out.text << name << " = " << r.alpha.to_string() << "\n";
                out.text << "v_" << leading + 1 << " coefficient 1/c, c = " << fgl::to_string(r.scalar) << "\n";
                out.text << "C(p^" << leading + 1 << ", k p^" << leading << ") = " << r.binomial.get_str()
                         << ", valuation " << r.valuation << "\n";
                out.doc["alpha"] = poly_entry(name, r.alpha);
                out.doc["scalar"] = fgl::to_string(r.scalar);
                out.doc["valuation"] = r.valuation;
                if (!r.linear_term_cancels || !r.scalar_matches_alpha)
                    throw fgl::InvariantError("leading relation check failed for " + name);
            } else {
                emit_poly(out, fgl::alpha_name(i, j), fgl::bp_fgl_coeff(prime, i, j));
            }
        } else if (bp_express->parsed()) {
            if (kseq.empty())
                kseq.assign(upto, 1);
            if (kseq.size() < upto)
                throw fgl::DomainError("--k needs " + std::to_string(upto) + " entries");
            out.doc["prime"] = prime;
            for (unsigned n = 1; n <= upto; ++n)
                emit_poly(out, "v_" + std::to_string(n),
                          fgl::express_v_in_alphas(prime, n, {kseq.begin(), kseq.begin() + n}));
        } else if (mor_fgl->parsed()) {
            out.doc["prime"] = prime;
            out.doc["height"] = height;
            if (show_log) {
                const auto l = fgl::gs_log(height, prime, degree);
                out.text << "log(t) = " << l.to_string() << "\n";
                out.doc["log"] = l.to_string();
            } else {
                fgl::Series2<fgl::Fp> law(0, fgl::Fp(0, prime));
                if (method == "formula")
                    law = reduce_series(fgl::gs_fgl(prime, height, degree), prime);
                else if (method == "log")
                    law = reduce_series(fgl::fgl_from_log(fgl::gs_log(height, prime, degree), degree), prime);
                else {
                    const auto m = fgl::ravenel_fgl_modp(prime, height, degree);
                    law = m.law;
                    out.doc["iterations"] = m.iterations;
                }
                out.text << "F(x,y) = " << law.to_string() << "\n";
                out.doc["fgl"] = law.to_string();
            }
        } else if (mor_witt->parsed()) {
            for (unsigned n = 1; n <= upto; ++n)
                emit_poly(out, "W^(" + std::to_string(n) + ")", fgl::witt_symmetric(n));
        } else if (mor_approx->parsed()) {
            const bool explicit_degree = mor_approx->count("--degree") > 0;
            const auto r = kind == "wp" ? fgl::verify_wp_approx(prime, height, explicit_degree ? degree : 0)
                                        : fgl::verify_bv_approx(height, explicit_degree ? degree : 0);
            out.text << (r.ok ? "holds" : "fails") << " to degree " << r.checked_degree << ": " << r.statement << "\n";
            if (!r.ok)
                out.text << "first difference: " << r.witness << "\n";
            out.doc = {{"ok", r.ok}, {"checked_degree", r.checked_degree}, {"statement", r.statement},
                       {"witness", r.witness}};
            out.status = r.ok ? ok : mismatch;
        } else if (ab_coeffs->parsed()) {
            const auto a = method == "assoc" ? fgl::abel_coeffs_assoc(std::max(upto, 2u))
                                             : fgl::abel_coeffs_closed(std::max(upto, 2u));
            for (unsigned n = 1; n <= upto; ++n)
                emit_poly(out, "a_" + std::to_string(n), a[n]);
        } else if (ab_log->parsed()) {
            if (method == "product") {
                for (unsigned n = 1; n <= upto; ++n)
                    emit_poly(out, "m_" + std::to_string(n), fgl::abel_log_product(n + 1));
            } else if (method == "uv") {
                const auto c = fgl::abel_log_uv(upto + 1);
                for (unsigned n = 1; n <= upto; ++n)
                    emit_poly(out, "m_" + std::to_string(n), in_a ? c[n + 1] : fgl::uv_to_a(c[n + 1]));
            } else {
                const auto m = fgl::abel_log_integral(upto);
                for (unsigned n = 1; n <= upto; ++n)
                    emit_poly(out, "m_" + std::to_string(n), m[n]);
            }
        } else if (ab_exp->parsed()) {
            const auto e = fgl::exp_abel_uv(upto);
            for (unsigned n = 1; n <= upto; ++n)
                emit_poly(out, "e_" + std::to_string(n), in_a ? fgl::uv_to_a(e[n]) : e[n]);
        } else if (ab_mem->parsed()) {
            const fgl::Poly f = fgl::parse_poly(poly_text, fgl::root_vars());
            out.doc["samples"] = json::array();
            for (const auto& s : fgl::lambda_membership_sample(f, parse_pairs(pairs_text))) {
                out.text << "(k,l) = (" << s.k << "," << s.l << "): " << (s.ok ? "integral" : "not integral") << "  "
                         << s.image << (s.ok ? "" : "  at " + s.witness) << "\n";
                out.doc["samples"].push_back(
                    {{"k", s.k}, {"l", s.l}, {"ok", s.ok}, {"image", s.image}, {"witness", s.witness}});
                if (!s.ok)
                    out.status = mismatch;
            }
        } else if (pt_img->parsed()) {
            out.doc["prime"] = prime;
            if (log_degree >= 0) {
                const auto l = fgl::ptypical_log(prime, static_cast<unsigned>(log_degree));
                out.text << "log(t) = " << l.to_string() << "\n";
                out.doc["log"] = l.to_string();
            } else {
                const auto cm = fgl::classify_v_images(prime, upto);
                for (unsigned n = 1; n <= upto; ++n)
                    emit_poly(out, "v_" + std::to_string(n), cm.image(n));
            }
        } else if (pt_ker->parsed()) {
            const auto rs = fgl::kernel_relations(prime, nmax, weight);
            out.doc = {{"prime", rs.p}, {"depth", rs.depth}, {"max_weight", rs.max_weight},
                       {"grading", topological ? "topological" : "weight"}, {"weights", json::array()},
                       {"warnings", rs.warnings}};
            for (const auto& w : rs.warnings)
                out.text << "warning: " << w << "\n";
            for (const auto& wk : rs.weights) {
                if (wk.relations.empty())
                    continue;
                json e{{"weight", deg(wk.weight)}, {"monomial_count", wk.monomial_count}, {"rank", wk.rank},
                       {"relations", json::array()}, {"mod2", json::array()}};
                out.text << (topological ? "degree " : "weight ") << deg(wk.weight) << ": " << wk.monomial_count
                         << " monomials, rank " << wk.rank << ", kernel " << wk.kernel_dimension() << ", minimal "
                         << wk.minimal_count() << "\n";
                for (const auto& r : wk.relations) {
                    if (!r.minimal)
                        continue;
                    out.text << "  " << r.reduction.to_string() << "    [" << r.poly.to_string() << "]\n";
                    e["relations"].push_back(r.poly.to_json());
                    e["mod2"].push_back(r.reduction.to_string());
                }
                out.doc["weights"].push_back(std::move(e));
            }
            if (mod2) {
                const auto pres = fgl::mod2_presentation(rs);
                json g = json::array();
                out.text << "mod 2 generators:\n";
                for (const auto& f : pres.generators) {
                    out.text << "  " << f.to_string() << "\n";
                    g.push_back(f.to_string());
                }
                for (const auto& m : pres.expected_missing)
                    out.text << "missing: " << m << "\n";
                json wit{{"found", pres.witness.found}};
                if (pres.witness.found) {
                    out.text << "witness: " << pres.witness.target.to_string() << " = v1*("
                             << pres.witness.cofactor.to_string() << ") + (" << pres.witness.relation.to_string()
                             << ")\n";
                    wit["cofactor"] = pres.witness.cofactor.to_string();
                    wit["relation"] = pres.witness.relation.to_string();
                }
                out.doc["presentation"] = {{"generators", g}, {"missing", pres.expected_missing},
                                           {"matches_expected", pres.matches_expected}, {"witness", wit}};
            }
        } else if (pt_gen->parsed()) {
            const auto parts = fgl::genfun_parts(upto);
            const auto closed = fgl::genfun_closed(upto);
            const unsigned scale = topological ? 2 : 1;
            out.text << "free:   " << parts.free_part.to_string(scale) << "\n";
            out.text << "powers: " << parts.power_part.to_string(scale) << "\n";
            out.text << "v1:     " << parts.v1_part.to_string(scale) << "\n";
            out.text << "closed: " << closed.to_string(scale) << "\n";
            const bool agree = parts.sum() == closed && closed.nonnegative();
            out.text << (agree ? "sum of parts equals the closed form\n" : "sum of parts differs from the closed form\n");
            json coeffs = json::array();
            for (const auto& c : closed.coeffs)
                coeffs.push_back(c.get_str());
            out.doc = {{"free", parts.free_part.to_string(scale)}, {"powers", parts.power_part.to_string(scale)},
                       {"v1", parts.v1_part.to_string(scale)}, {"closed", closed.to_string(scale)},
                       {"coefficients", coeffs}, {"agree", agree}};
            out.status = agree ? ok : mismatch;
        } else if (pt_conj->parsed()) {
            const auto rep = fgl::conjecture_check(weight, nmax);
            out.doc = {{"max_weight", rep.max_weight}, {"lines", json::array()}, {"warnings", rep.warnings}};
            for (const auto& w : rep.warnings)
                out.text << "warning: " << w << "\n";
            for (const auto& l : rep.lines) {
                out.text << "weight " << l.weight << ": rank " << l.computed_rank << ", predicted "
                         << l.predicted_rank.get_str() << (l.rank_matches ? "" : "  MISMATCH") << "\n";
                for (const auto& s : l.shape_failures)
                    out.text << "  leading shape differs: " << s << "\n";
                out.doc["lines"].push_back({{"weight", l.weight},
                                            {"rank", l.computed_rank},
                                            {"predicted", l.predicted_rank.get_str()},
                                            {"relations", l.relations},
                                            {"shape_failures", l.shape_failures}});
            }
            out.text << (rep.all_consistent() ? "consistent" : "discrepancies listed above") << "\n";
        } else if (repro->parsed()) {
            std::string text = fglc::embedded_fixtures;
            if (!fixtures_path.empty()) {
                std::ifstream in(fixtures_path);
                if (!in)
                    throw fgl::DomainError("cannot read " + fixtures_path);
                std::ostringstream ss;
                ss << in.rdbuf();
                text = ss.str();
            }
            const auto rep = fgl::reproduce(fgl::load_fixtures(text), weight);
            out.text << rep.to_text();
            out.doc = rep.to_json();
            out.status = rep.all_pass() ? ok : mismatch;
        }
    } catch (const fgl::InvariantError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return invariant;
    } catch (const fgl::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }

    const std::string body = format == "json" ? out.doc.dump(2) + "\n" : out.text.str();
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return usage;
        }
        f << body;
    }
    return out.status;
}
