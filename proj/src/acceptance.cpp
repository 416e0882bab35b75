#include "symindiv/acceptance.hpp"

#include "symindiv/constructions.hpp"
#include "symindiv/embeddings.hpp"
#include "symindiv/generators.hpp"
#include "symindiv/indivisibility.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

namespace symindiv::acceptance {

namespace {

// Collects failed sub-checks; the criterion passes iff none failed.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++total_;
        if (!ok) failures_.push_back(what);
    }
    bool ok() const { return failures_.empty(); }
    std::string summary(const std::string& success) const {
        if (ok()) return success;
        std::string out = std::to_string(failures_.size()) + "/" + std::to_string(total_) + " checks failed: ";
        for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) out += (i ? "; " : "") + failures_[i];
        if (failures_.size() > 3) out += "; ...";
        return out;
    }

private:
    std::size_t total_ = 0;
    std::vector<std::string> failures_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

std::optional<Index> first_witness(Index bound, const std::function<bool(Index)>& ok) {
    for (Index w = 0; w < bound; ++w)
        if (ok(w)) return w;
    return std::nullopt;
}

// ------------------------------------------------------------------ 1

std::string extension_property(Checks& c) {
    const auto t0 = Clock::now();
    auto rado = eval("(rado)");
    Index rado_cases = 0;
    for (unsigned a = 0; a < 64; ++a)
        for (unsigned b = 0; b < 64; ++b) {
            if (a & b) continue;
            ++rado_cases;
            auto w = first_witness(Index{1} << 13, [&](Index w) {
                if (w < 6 && (((a | b) >> w) & 1U)) return false;
                for (Index v = 0; v < 6; ++v) {
                    if (v == w) continue;
                    const bool want = (a >> v) & 1U, avoid = (b >> v) & 1U;
                    if (!want && !avoid) continue;
                    if (rado.holds(std::size_t{0}, {v, w}) != want) return false;
                }
                return true;
            });
            c.expect(w.has_value(), "rado A=" + std::to_string(a) + " B=" + std::to_string(b));
        }

    auto g2 = eval("(gammak 2)");
    Index gk_cases = 0;
    for (unsigned code = 0; code < 81; ++code) {
        Index want[4];
        for (unsigned v = 0, x = code; v < 4; ++v, x /= 3) want[v] = x % 3;
        ++gk_cases;
        auto w = first_witness(243, [&](Index w) {
            if (w < 4) return false;
            for (Index v = 0; v < 4; ++v) {
                Index colour = 0;
                for (Index d = 1; d <= 2; ++d)
                    if (g2.holds(static_cast<std::size_t>(d - 1), {v, w})) colour = d;
                if (colour != want[v]) return false;
            }
            return true;
        });
        c.expect(w.has_value(), "gammak(2) assignment " + std::to_string(code));
    }

    auto h3 = eval("(hyper 3)");
    const std::pair<Index, Index> pairs[6] = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    Index hyper_cases = 0;
    for (unsigned mask = 0; mask < 64; ++mask) {
        ++hyper_cases;
        auto w = first_witness(128, [&](Index w) {
            if (w < 4) return false;
            for (unsigned p = 0; p < 6; ++p) {
                const bool want = (mask >> p) & 1U;
                if (h3.holds(std::size_t{0}, {pairs[p].first, pairs[p].second, w}) != want) return false;
            }
            return true;
        });
        c.expect(w.has_value(), "hyper(3) assignment " + std::to_string(mask));
    }
    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 5.0, "runtime " + fmt_seconds(elapsed) + " exceeds 5 s");
    return std::to_string(rado_cases) + " rado, " + std::to_string(gk_cases) + " gammak(2), " +
           std::to_string(hyper_cases) + " hyper(3) cases realized";
}

// ------------------------------------------------------------------ 2

void dlo_checks(Checks& c, const std::string& text) {
    auto s = eval(text);
    const Index budget = 512;
    std::vector<Index> first(8);
    for (Index i = 0; i < 8; ++i) first[i] = i;
    std::sort(first.begin(), first.end(), [&](Index a, Index b) { return s.holds(std::size_t{0}, {a, b}); });
    for (std::size_t k = 0; k + 1 < first.size(); ++k) {
        const Index a = first[k], b = first[k + 1];
        auto w = first_witness(budget, [&](Index w) {
            return s.holds(std::size_t{0}, {a, w}) && s.holds(std::size_t{0}, {w, b});
        });
        c.expect(w.has_value(), text + ": no element between " + std::to_string(a) + " and " + std::to_string(b));
    }
    for (Index a : first) {
        c.expect(first_witness(budget, [&](Index w) { return s.holds(std::size_t{0}, {w, a}); }).has_value(),
                 text + ": " + std::to_string(a) + " looks like a minimum");
        c.expect(first_witness(budget, [&](Index w) { return s.holds(std::size_t{0}, {a, w}); }).has_value(),
                 text + ": " + std::to_string(a) + " looks like a maximum");
    }
}

std::string dlo_suite(Checks& c) {
    dlo_checks(c, "(rationals)");
    dlo_checks(c, "(lexq (finite-order 2))");
    auto q = eval("(rationals)");
    auto l = eval("(lexq (finite-order 2))");
    auto r = back_and_forth(q, l, 20, Index{1} << 12);
    c.expect(found(r), "back_and_forth exhausted: " + (found(r) ? std::string() : exhausted(r).detail));
    if (found(r)) {
        c.expect(value(r).size() == 20, "back_and_forth resolved " + std::to_string(value(r).size()) + " pairs");
        c.expect(is_partial_isomorphism(q, l, value(r)), "back_and_forth map is not a partial isomorphism");
    }
    return "density and no-endpoint checks on both orders; back-and-forth 20 steps";
}

// ------------------------------------------------------------------ 3

std::string greedy_suite(Checks& c) {
    const auto t0 = Clock::now();
    auto a = eval("(endow (gammastar))");
    auto u = eval("(endow (rado))");
    GreedyOptions o;
    o.respect_enum_order = true;
    o.steps = 24;
    auto r = greedy_embedding(a, u, o);
    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 10.0, "runtime " + fmt_seconds(elapsed) + " exceeds 10 s");
    if (!found(r)) {
        const auto& ex = exhausted(r);
        std::string deepest;
        for (const auto& [s, t] : ex.deepest) deepest += (deepest.empty() ? "" : ",") + std::to_string(t);
        c.expect(false, "exhausted at source index " + (ex.stuck_index ? std::to_string(*ex.stuck_index) : "?") +
                            " (deepest targets [" + deepest + "])");
        return "";
    }
    const auto& p = value(r).resolved().pairs;
    c.expect(p.size() == 24, "resolved " + std::to_string(p.size()) + " points");
    for (std::size_t i = 1; i < p.size(); ++i)
        c.expect(p[i - 1].second < p[i].second, "targets not increasing at " + std::to_string(i));
    PartialIsomorphism step;
    for (const auto& pr : p) {
        step.pairs.push_back(pr);
        c.expect(is_partial_isomorphism(a, u, step), "prefix of length " + std::to_string(step.size()) + " invalid");
    }
    return "24 points, increasing targets, every prefix a partial isomorphism";
}

// ------------------------------------------------------------------ 4

std::string henson_suite(Checks& c) {
    auto cycle = eval("(finite-graph 4 (0 1) (1 2) (2 3) (3 0))");
    auto hc = henson_closure(cycle);
    const auto& h = hc.closure;
    for (unsigned a = 0; a < 32; ++a)
        for (unsigned b = 0; b < 32; ++b) {
            if (a & b) continue;
            auto w = first_witness(512, [&](Index w) {
                if (w < 5 && (((a | b) >> w) & 1U)) return false;
                for (Index v = 0; v < 5; ++v) {
                    if (v == w) continue;
                    const bool want = (a >> v) & 1U, avoid = (b >> v) & 1U;
                    if (!want && !avoid) continue;
                    if (h.holds(std::size_t{0}, {std::min(v, w), std::max(v, w)}) != want) return false;
                }
                return true;
            });
            c.expect(w.has_value(), "closure A=" + std::to_string(a) + " B=" + std::to_string(b));
        }

    PartialIsomorphism sigma;
    for (Index i = 0; i < 4; ++i) sigma.insert(hc.inclusion.apply(i), hc.inclusion.apply((i + 1) % 4));
    std::vector<Index> query(32);
    for (Index i = 0; i < 32; ++i) query[i] = i;
    auto ext = extend_automorphism(hc.inclusion, sigma, query);
    c.expect(ext.size() == 32, "extension determined " + std::to_string(ext.size()) + " of 32 indices");
    c.expect(is_partial_isomorphism(h, h, ext), "extended rotation is not a partial isomorphism");
    for (const auto& [from, to] : sigma.pairs) c.expect(ext.image(from) == to, "extension disagrees with sigma");
    return "extension property on 5 vertices; rotation extended to 32 indices";
}

// ------------------------------------------------------------------ 5

std::string gammastar_suite(Checks& c) {
    auto gs = eval("(gammastar)");
    Coloring part(coloring::GammaStarPart{});
    auto deg = prefix_color_max_degree(gs, part, 210);
    c.expect(deg[kBlue] <= 20, "blue max degree " + std::to_string(deg[kBlue]));
    c.expect(deg[kRed] > 20, "red max degree " + std::to_string(deg[kRed]));

    SearchOptions o;
    o.steps = 8;
    auto rado = eval("(rado)");
    auto r = find_monochromatic_copy(gs, part, rado, kBlue, o);
    c.expect(!found(r), "blue copy of rado found in gammastar");

    for (int run = 0; run < 2; ++run) {
        auto [swap, fixed] = gamma_star_obstruction(2, 12);
        c.expect(swap.passed() && fixed.passed(), "obstruction certificate failed");
        c.expect(replay(swap) == swap && replay(fixed) == fixed, "certificate replay differs");
    }
    return "blue max degree " + std::to_string(deg[kBlue]) + ", red " + std::to_string(deg[kRed]) +
           "; blue rado search exhausted; certificates replayed";
}

// ------------------------------------------------------------------ 6

std::string decoder_suite(Checks& c) {
    const std::pair<const char*, const char*> graphs[] = {
        {"triangle", "(finite-graph 3 (0 1) (1 2) (0 2))"},
        {"3-path", "(finite-graph 3 (0 1) (1 2))"},
        {"2 isolated vertices", "(finite-graph 2)"},
    };
    for (const auto& [name, text] : graphs) {
        auto g = parse_term(text);
        auto d = decode_graph(term::encode_graph(g), 64);
        c.expect(structurally_equal(d.graph, g), std::string(name) + " decoded as " + to_string(d.graph));
        c.expect(d.certificate.left_connected && d.certificate.cross_edges == 0,
                 std::string(name) + " certificate incomplete");
        c.expect(!d.certificate.right_components.empty(), std::string(name) + " has no component certificate");
    }
    for (const char* text : {"(finite-order 3)", "(rationals)"}) {
        auto a = parse_term(text);
        auto r = decode_order(term::encode_order(a), 512);
        if (!found(r)) {
            c.expect(false, std::string("decode_order exhausted on ") + text);
            continue;
        }
        c.expect(value(r).provenance_match == true && !value(r).indices.empty(),
                 std::string("decoded prefix of ") + text + " does not match");
    }
    c.expect(!found(decode_order(term::rationals(), 512)), "decode_order(rationals) found a gap");
    return "three graphs and two orders round-trip; rationals has no gap";
}

// ------------------------------------------------------------------ 7

const char* const kEndowedTerms[] = {
    "(endow (rado))",
    "(endow (rationals))",
    "(endow (gammak 2))",
    "(endow (hyper 3))",
    "(endow (gammastar))",
    "(endow (lexq (finite-order 2)))",
    "(endow (henson (finite-graph 4 (0 1) (1 2) (2 3) (3 0))))",
    "(endow (encode-graph (finite-graph 3 (0 1) (1 2))))",
    "(endow (encode-order (finite-order 3)))",
};

std::string rigidity_suite(Checks& c) {
    for (const char* t : kEndowedTerms) {
        auto bad = nontrivial_prefix_self_embeddings(eval(t), 6);
        c.expect(bad.empty(), std::string(t) + " has a non-identity prefix self-embedding");
    }
    return std::to_string(std::size(kEndowedTerms)) + " endowed terms rigid on prefixes up to 6";
}

// ------------------------------------------------------------------ 8

std::string demo_suite(Checks& c) {
    auto first = reduct_counterexample_demo(64, 24, Index{1} << 16);
    auto second = reduct_counterexample_demo(64, 24, Index{1} << 16);
    for (const auto& s : first.stages) c.expect(s.status == "passed", "stage " + s.name + " " + s.status);
    c.expect(first.hash() == second.hash(), "report hash differs between runs");
    return "all five stages passed; hash " + first.hash();
}

// ------------------------------------------------------------------ 9

std::string transfer_suite(Checks& c) {
    auto rado = eval("(rado)");
    auto id = SymmetricEmbeddingHandle::identity(rado);
    auto r = transfer_symmetric_copy(rado, rado, id, id, Coloring(coloring::Parity{}), greedy_base_finder(), 8,
                                     65536);
    if (!found(r)) {
        c.expect(false, "transfer exhausted: " + exhausted(r).stage + ": " + exhausted(r).detail);
        return "";
    }
    const auto& rep = value(r);
    const auto& hops = rep.hops;
    const auto& fin = rep.final_embedding.resolved();
    c.expect(fin.size() == 8, "final embedding has " + std::to_string(fin.size()) + " points");
    c.expect(rep.monochromatic && rep.composition_verified, "report flags not set");
    c.expect(is_partial_isomorphism(rado, rado, fin), "final map is not a partial isomorphism");
    const Color col = rep.color;
    for (const auto& [n, out] : fin.pairs) {
        c.expect((out % 2 == 0) == (col == kRed), "index " + std::to_string(out) + " off-colour");
        const auto k = hops[2].map.image(n);
        const auto f = k ? hops[1].map.image(*k) : std::nullopt;
        const auto o = f ? hops[0].map.image(*f) : std::nullopt;
        c.expect(o == out, "composition differs at " + std::to_string(n));
    }
    c.expect(rep.symmetric_status == SymmetricStatus::kClaimed, "status should be claimed");
    std::string targets;
    for (const auto& [n, out] : fin.pairs) targets += (targets.empty() ? "" : ",") + std::to_string(out);
    return color_name(col) + " copy [" + targets + "], status " + status_name(rep.symmetric_status);
}

struct Criterion {
    const char* name;
    std::string (*run)(Checks&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"extension-property", extension_property},
    {"dlo", dlo_suite},
    {"greedy-endowed-embedding", greedy_suite},
    {"henson-closure", henson_suite},
    {"gammastar-counterexample", gammastar_suite},
    {"decoder-roundtrips", decoder_suite},
    {"rigidity", rigidity_suite},
    {"reduct-demo", demo_suite},
    {"transfer-pipeline", transfer_suite},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw InvalidInput("criterion id must be in 1.." + std::to_string(kCriterionCount));
    const auto& crit = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = crit.name;
    const auto t0 = Clock::now();
    Checks c;
    try {
        const std::string success = crit.run(c);
        r.passed = c.ok();
        r.detail = c.summary(success);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("unexpected exception: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
    return out;
}

std::string format_line(const CriterionResult& r) {
    return std::string(r.passed ? "PASS " : "FAIL ") + std::to_string(r.id) + " " + r.name + " (" +
           fmt_seconds(r.seconds) + "): " + r.detail;
}

}  // namespace symindiv::acceptance
