#include "symindiv/indivisibility.hpp"

#include "symindiv/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>

namespace symindiv {

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Index parse_number(std::string_view s, std::string_view what) {
    Index v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidInput("coloring: expected a natural number for " + std::string(what) + ", got '" +
                           std::string(s) + "'");
    return v;
}

Color parse_color(std::string_view s) {
    if (s == "red") return kRed;
    if (s == "blue") return kBlue;
    return static_cast<Color>(parse_number(s, "a colour"));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------------ colorings

Coloring::Coloring(ColoringSpec spec) : spec_(std::move(spec)) {
    if (auto m = std::get_if<coloring::Mod>(&spec_)) {
        if (m->k < 2) throw InvalidInput("mod colouring needs k >= 2");
    }
    if (auto e = std::get_if<coloring::Explicit>(&spec_)) {
        for (Color c : e->colors)
            if (c > kBlue) throw InvalidInput("explicit colouring uses colour " + std::to_string(c) + " outside {0,1}");
        if (e->fallback > kBlue) throw InvalidInput("explicit colouring default outside {0,1}");
    }
}

Coloring Coloring::parse(std::string_view text) {
    auto parts = split(text, ':');
    const auto head = parts[0];
    if (head == "parity" && parts.size() == 1) return Coloring(coloring::Parity{});
    if (head == "gammastar-part" && parts.size() == 1) return Coloring(coloring::GammaStarPart{});
    if (head == "mod" && parts.size() == 3)
        return Coloring(coloring::Mod{parse_number(parts[1], "k"), parse_number(parts[2], "r")});
    if (head == "threshold" && parts.size() == 2) return Coloring(coloring::Threshold{parse_number(parts[1], "n")});
    if (head == "list" && parts.size() == 3) {
        coloring::Explicit e;
        if (!parts[1].empty())
            for (auto c : split(parts[1], ',')) e.colors.push_back(parse_color(c));
        e.fallback = parse_color(parts[2]);
        return Coloring(std::move(e));
    }
    throw InvalidInput("unrecognised colouring '" + std::string(text) +
                       "'; expected parity | mod:k:r | gammastar-part | threshold:n | list:c0,c1,...:default");
}

Color Coloring::palette_size() const noexcept {
    if (auto m = std::get_if<coloring::Mod>(&spec_)) return static_cast<Color>(m->k);
    return 2;
}

Color Coloring::operator()(Index i) const {
    return std::visit(overloaded{
                          [&](const coloring::Parity&) { return i % 2 == 0 ? kRed : kBlue; },
                          [&](const coloring::Mod& m) {
                              return static_cast<Color>((i % m.k + m.r % m.k) % m.k);
                          },
                          [&](const coloring::GammaStarPart&) {
                              return std::holds_alternative<GammaVertex>(gamma_star_classify(i)) ? kRed : kBlue;
                          },
                          [&](const coloring::Threshold& t) { return i < t.n ? kRed : kBlue; },
                          [&](const coloring::Explicit& e) { return i < e.colors.size() ? e.colors[i] : e.fallback; },
                      },
                      spec_);
}

ColorFn Coloring::fn() const {
    return [c = *this](Index i) { return c(i); };
}

Color color_of(const Coloring& c, Index i) { return c(i); }

std::string color_name(Color c) {
    if (c == kRed) return "red";
    if (c == kBlue) return "blue";
    return std::to_string(c);
}

std::string to_string(const Coloring& c) {
    return std::visit(overloaded{
                          [](const coloring::Parity&) -> std::string { return "parity"; },
                          [](const coloring::Mod& m) -> std::string {
                              return "mod:" + std::to_string(m.k) + ":" + std::to_string(m.r);
                          },
                          [](const coloring::GammaStarPart&) -> std::string { return "gammastar-part"; },
                          [](const coloring::Threshold& t) -> std::string {
                              return "threshold:" + std::to_string(t.n);
                          },
                          [](const coloring::Explicit& e) -> std::string {
                              std::string out = "list:";
                              for (std::size_t i = 0; i < e.colors.size(); ++i)
                                  out += (i ? "," : "") + std::to_string(e.colors[i]);
                              return out + ":" + std::to_string(e.fallback);
                          },
                      },
                      c.spec());
}

std::vector<long long> prefix_color_max_degree(const CountableStructure& u, const Coloring& c, Index prefix_size) {
    const Index n = u.count_below(prefix_size);
    std::vector<long long> degree(n, 0);
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b)
            if (u.holds(std::size_t{0}, {a, b})) {
                ++degree[a];
                ++degree[b];
            }
    std::vector<long long> best(c.palette_size(), -1);
    for (Index v = 0; v < n; ++v) {
        auto col = c(v);
        best[col] = std::max(best[col], degree[v]);
    }
    return best;
}

// ------------------------------------------------------ monochromatic copies

Outcome<MonochromaticCopy> find_monochromatic_copy(const CountableStructure& u, const ColorFn& color_of,
                                                   Color palette_size, const CountableStructure& target,
                                                   std::optional<Color> color, const SearchOptions& options) {
    require_compatible(target.signature(), u.signature());
    if (color && *color >= palette_size)
        throw InvalidInput("colour " + std::to_string(*color) + " outside the palette");
    std::vector<Color> candidates;
    if (color) candidates.push_back(*color);
    else
        for (Color c = 0; c < palette_size; ++c) candidates.push_back(c);

    std::string diagnostics;
    std::vector<std::pair<Index, Index>> deepest;
    std::optional<Index> stuck;
    for (Color c : candidates) {
        GreedyOptions g;
        g.respect_enum_order = options.respect_enum_order;
        g.steps = options.steps;
        g.witness_budget = options.witness_budget;
        g.backtrack_depth = options.backtrack_depth;
        g.color_filter = ColorFilter{color_of, c};
        auto r = greedy_embedding(target, u, g);
        if (found(r)) {
            const auto& e = value(r);
            for (const auto& [s, t] : e.resolved().pairs)
                if (color_of(t) != c) throw Error("monochromatic search returned an off-colour target");
            if (!is_partial_isomorphism(target, u, e.resolved()))
                throw Error("monochromatic search returned a map that is not a partial isomorphism");
            return MonochromaticCopy{e, c};
        }
        const auto& ex = exhausted(r);
        if (!diagnostics.empty()) diagnostics += "; ";
        diagnostics += color_name(c) + ": " + ex.detail;
        if (ex.deepest.size() >= deepest.size()) {
            deepest = ex.deepest;
            stuck = ex.stuck_index;
        }
    }
    return Exhausted{"find_monochromatic_copy", stuck, diagnostics, deepest};
}

Outcome<MonochromaticCopy> find_monochromatic_copy(const CountableStructure& u, const Coloring& c,
                                                   const CountableStructure& target, std::optional<Color> color,
                                                   const SearchOptions& options) {
    return find_monochromatic_copy(u, c.fn(), c.palette_size(), target, color, options);
}

// ---------------------------------------------------- obstruction certificates

namespace {

std::vector<EvidenceCheck> transposition_evidence(const TranspositionAutomorphism& t, Index prefix_size) {
    std::vector<EvidenceCheck> ev;
    // The swap moves only pairs through i or j; each must map to a pair with
    // the same adjacency.
    auto swap = [&](Index x) { return x == t.i ? t.j : x == t.j ? t.i : x; };
    for (Index x = 0; x < prefix_size; ++x) {
        if (x == t.i || x == t.j) continue;
        for (Index a : {t.i, t.j})
            ev.push_back({{a, x}, gamma_star_edge(a, x), gamma_star_edge(swap(a), swap(x))});
    }
    ev.push_back({{t.i, t.j}, gamma_star_edge(t.i, t.j), gamma_star_edge(t.j, t.i)});
    return ev;
}

std::vector<EvidenceCheck> fixed_point_evidence(const GammaFixedPoint& g, Index prefix_size) {
    std::vector<EvidenceCheck> ev;
    for (Index v = 0; v < prefix_size; ++v)
        if (gamma_star_eventual_degree(v) == g.from_block) ev.push_back({{g.from, v}, true, gamma_star_edge(g.from, v)});
    for (Index v = 0; v < prefix_size; ++v)
        if (gamma_star_eventual_degree(v) == g.from_block) ev.push_back({{g.to, v}, false, gamma_star_edge(g.to, v)});
    return ev;
}

}  // namespace

bool ObstructionCertificate::passed() const {
    if (evidence.empty()) return false;
    const bool all_match =
        std::all_of(evidence.begin(), evidence.end(), [](const EvidenceCheck& e) { return e.expected == e.observed; });
    if (!all_match) return false;
    if (std::holds_alternative<GammaFixedPoint>(kind)) {
        // g_to needs to fail at least one adjacency (the "false" entries).
        return std::any_of(evidence.begin(), evidence.end(), [](const EvidenceCheck& e) { return !e.expected; });
    }
    return true;
}

nlohmann::ordered_json ObstructionCertificate::to_json() const {
    nlohmann::ordered_json j;
    std::visit(overloaded{
                   [&](const TranspositionAutomorphism& t) {
                       j["kind"] = "transposition-automorphism";
                       j["n"] = t.n;
                       j["swap"] = {t.i, t.j};
                   },
                   [&](const GammaFixedPoint& g) {
                       j["kind"] = "gamma-fixed-point";
                       j["blocks"] = {g.from_block, g.to_block};
                       j["pair"] = {g.from, g.to};
                   },
               },
               kind);
    j["prefix_size"] = prefix_size;
    j["passed"] = passed();
    auto& ev = j["evidence"] = nlohmann::ordered_json::array();
    for (const auto& e : evidence) ev.push_back({{"tuple", e.tuple}, {"expected", e.expected}, {"observed", e.observed}});
    return j;
}

std::pair<ObstructionCertificate, ObstructionCertificate> gamma_star_obstruction(Index n, Index prefix_size) {
    if (n < 2) throw InvalidInput("gamma_star_obstruction needs n >= 2 (K_n must have two slots to swap)");
    const Index block_end = (n + 1) * (n + 2) / 2;
    if (prefix_size < block_end)
        throw InvalidInput("prefix of size " + std::to_string(prefix_size) + " does not cover block " +
                           std::to_string(n) + " (needs " + std::to_string(block_end) + ")");
    ObstructionCertificate swap;
    TranspositionAutomorphism t{n, gamma_star_index(CliqueVertex{n, 0}), gamma_star_index(CliqueVertex{n, 1})};
    swap.kind = t;
    swap.prefix_size = prefix_size;
    swap.evidence = transposition_evidence(t, prefix_size);

    ObstructionCertificate fixed;
    GammaFixedPoint g{n - 1, n, gamma_star_index(GammaVertex{n - 1}), gamma_star_index(GammaVertex{n})};
    fixed.kind = g;
    fixed.prefix_size = prefix_size;
    fixed.evidence = fixed_point_evidence(g, prefix_size);
    return {swap, fixed};
}

ObstructionCertificate replay(const ObstructionCertificate& cert) {
    ObstructionCertificate out;
    out.kind = cert.kind;
    out.prefix_size = cert.prefix_size;
    out.evidence = std::visit(overloaded{
                                  [&](const TranspositionAutomorphism& t) {
                                      return transposition_evidence(t, cert.prefix_size);
                                  },
                                  [&](const GammaFixedPoint& g) { return fixed_point_evidence(g, cert.prefix_size); },
                              },
                              cert.kind);
    return out;
}

// ------------------------------------------------------------------ transfer

const char* status_name(SymmetricStatus s) { return s == SymmetricStatus::kCertified ? "certified" : "claimed"; }

BaseFinder greedy_base_finder(Index backtrack_depth) {
    return [backtrack_depth](const CountableStructure& m, const ColorFn& color_of, Color palette_size, Index steps,
                             Index budget) -> Outcome<BaseCopy> {
        SearchOptions o;
        o.steps = steps;
        o.witness_budget = budget;
        o.backtrack_depth = backtrack_depth;
        auto r = find_monochromatic_copy(m, color_of, palette_size, m, std::nullopt, o);
        if (!found(r)) return exhausted(r);
        return BaseCopy{value(r).embedding, value(r).color, false};
    };
}

namespace {

nlohmann::ordered_json pairs_json(const PartialIsomorphism& m) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& [s, t] : m.pairs) a.push_back({s, t});
    return a;
}

}  // namespace

nlohmann::ordered_json TransferReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "symindiv.transfer/1";
    auto& hs = j["hops"] = nlohmann::ordered_json::array();
    for (const auto& h : hops)
        hs.push_back({{"name", h.name}, {"status", "ok"}, {"certified", h.certified}, {"map", pairs_json(h.map)}});
    j["color"] = color_name(color);
    j["monochromatic"] = monochromatic;
    j["composition_verified"] = composition_verified;
    j["symmetric_status"] = status_name(symmetric_status);
    j["embedding"] = final_embedding.dump();
    return j;
}

Outcome<TransferReport> transfer_symmetric_copy(const CountableStructure& m, const CountableStructure& n,
                                                const SymmetricEmbeddingHandle& e_m_to_n,
                                                const SymmetricEmbeddingHandle& e_n_to_m, const Coloring& c,
                                                const BaseFinder& base_finder, Index steps, Index budget) {
    if (!compatible(m.signature(), n.signature()))
        throw SignatureMismatch("transfer: M has signature " + to_string(m.signature()) + " but N has " +
                                to_string(n.signature()));
    require_compatible(e_m_to_n.source().signature(), m.signature());
    require_compatible(e_m_to_n.target().signature(), n.signature());
    require_compatible(e_n_to_m.source().signature(), n.signature());
    require_compatible(e_n_to_m.target().signature(), m.signature());

    const Index count = n.count_below(steps);

    // Hop 3 first, only to know how much of the base copy is needed.
    PartialIsomorphism hop3;
    Index base_steps = 0;
    for (Index i = 0; i < count; ++i) {
        Index k = e_n_to_m.apply(i);
        hop3.insert(i, k);
        base_steps = std::max(base_steps, k + 1);
    }

    // Hop 1: colour M through its image in N.
    ColorFn pulled = [c, e_m_to_n](Index x) { return c(e_m_to_n.apply(x)); };

    // Hop 2: monochromatic copy inside M.
    auto base = base_finder(m, pulled, c.palette_size(), base_steps, budget);
    if (!found(base)) {
        auto ex = exhausted(base);
        ex.stage = "hop 2 (monochromatic copy in M): " + ex.stage;
        return ex;
    }
    const BaseCopy& copy = value(base);
    PartialIsomorphism hop2 = copy.embedding.resolved();

    PartialIsomorphism hop1;
    LazyEmbedding final_embedding(n, n, Strategy::kComposite);
    for (Index i = 0; i < count; ++i) {
        auto f = copy.embedding(hop3.image(i).value());
        if (!f) throw Error("base copy does not cover index " + std::to_string(*hop3.image(i)));
        Index out = e_m_to_n.apply(*f);
        if (!hop1.in_domain(*f)) hop1.insert(*f, out);
        final_embedding.extend(i, out);
    }

    TransferReport report{{}, final_embedding, copy.color, true, true, SymmetricStatus::kClaimed};
    report.hops.push_back({"hop 1: M into N", true, hop1});
    report.hops.push_back({"hop 2: monochromatic copy in M", copy.certified, hop2});
    report.hops.push_back({"hop 3: N into the copy", true, hop3});
    for (const auto& [i, out] : final_embedding.resolved().pairs) {
        if (c(out) != copy.color) report.monochromatic = false;
        auto again = e_m_to_n.apply(copy.embedding(e_n_to_m.apply(i)).value());
        if (again != out) report.composition_verified = false;
    }
    if (!is_partial_isomorphism(n, n, final_embedding.resolved())) report.composition_verified = false;
    report.symmetric_status = copy.certified ? SymmetricStatus::kCertified : SymmetricStatus::kClaimed;
    return report;
}

// --------------------------------------------------------------- reduct demo

std::vector<std::vector<Index>> nontrivial_prefix_self_embeddings(const CountableStructure& s, Index max_size) {
    std::vector<std::vector<Index>> found_maps;
    for (Index size = 1; size <= s.count_below(max_size); ++size) {
        std::vector<Index> perm(size);
        std::iota(perm.begin(), perm.end(), Index{0});
        // Injective self-maps of a finite set are its permutations.
        do {
            PartialIsomorphism m;
            for (Index i = 0; i < size; ++i) m.pairs.emplace_back(i, perm[i]);
            bool identity = std::is_sorted(perm.begin(), perm.end());
            if (!identity && is_partial_isomorphism(s, s, m)) found_maps.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return found_maps;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool DemoReport::passed() const {
    return stages.size() == 5 &&
           std::all_of(stages.begin(), stages.end(), [](const DemoStage& s) { return s.status == "passed"; });
}

namespace {

nlohmann::ordered_json report_body(const DemoReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = "symindiv.demo-reduct/1";
    j["parameters"] = {{"prefix_size", r.prefix_size}, {"steps", r.steps}, {"budget", r.budget}};
    auto& st = j["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : r.stages)
        st.push_back({{"name", s.name}, {"status", s.status}, {"detail", s.detail}, {"data", s.data}});
    j["passed"] = r.passed();
    if (r.exhausted) j["exhausted_stage"] = r.exhausted->stage;
    return j;
}

DemoStage embedding_stage(const std::string& name, const std::string& from, const std::string& to, Index steps,
                          Index budget, std::optional<Exhausted>& first_exhausted) {
    auto a = eval(from);
    auto u = eval(to);
    GreedyOptions o;
    o.respect_enum_order = true;
    o.steps = steps;
    o.witness_budget = budget;
    auto r = greedy_embedding(a, u, o);
    DemoStage s{name, "", "", {}};
    s.data["source"] = from;
    s.data["target"] = to;
    if (found(r)) {
        const auto& e = value(r);
        bool increasing = true;
        const auto& p = e.resolved().pairs;
        for (std::size_t i = 1; i < p.size(); ++i) increasing = increasing && p[i - 1].second < p[i].second;
        const bool ok = increasing && p.size() == a.count_below(steps) && is_partial_isomorphism(a, u, e.resolved());
        s.status = ok ? "passed" : "failed";
        s.detail = std::to_string(p.size()) + " points, strictly increasing targets";
        s.data["embedding"] = e.dump();
    } else {
        const auto& ex = exhausted(r);
        s.status = "exhausted";
        s.detail = ex.detail;
        s.data["stuck_index"] = ex.stuck_index ? nlohmann::ordered_json(*ex.stuck_index) : nlohmann::ordered_json();
        s.data["deepest"] = pairs_json(PartialIsomorphism{ex.deepest});
        if (!first_exhausted) {
            first_exhausted = ex;
            first_exhausted->stage = name + ": " + ex.stage;
        }
    }
    return s;
}

}  // namespace

nlohmann::ordered_json DemoReport::to_json() const {
    auto j = report_body(*this);
    j["hash"] = hash();
    return j;
}

std::string DemoReport::hash() const { return fnv1a_hex(report_body(*this).dump()); }

DemoReport reduct_counterexample_demo(Index prefix_size, Index steps, Index budget) {
    DemoReport r;
    r.prefix_size = prefix_size;
    r.steps = steps;
    r.budget = budget;

    r.stages.push_back(embedding_stage("1: endow(gammastar) into endow(rado)", "(endow (gammastar))",
                                       "(endow (rado))", steps, budget, r.exhausted));
    r.stages.push_back(embedding_stage("2: endow(rado) into endow(gammastar)", "(endow (rado))",
                                       "(endow (gammastar))", steps, budget, r.exhausted));

    {
        DemoStage s{"3: rigidity of endowed prefixes", "", "", {}};
        bool ok = true;
        for (const char* t : {"(endow (gammastar))", "(endow (rado))"}) {
            auto bad = nontrivial_prefix_self_embeddings(eval(t), 6);
            s.data[t] = bad.size();
            ok = ok && bad.empty();
        }
        s.status = ok ? "passed" : "failed";
        s.detail = "only the identity embeds each prefix of size <= 6 into itself";
        r.stages.push_back(std::move(s));
    }
    {
        DemoStage s{"4: reduct of endow(gammastar) to {E} equals gammastar", "", "", {}};
        auto endowed = eval("(endow (gammastar))");
        auto red = reduct(endowed, {"E"});
        auto plain = eval("(gammastar)");
        Index mismatches = 0, checked = 0;
        for (Index a = 0; a < prefix_size; ++a)
            for (Index b = a + 1; b < prefix_size; ++b) {
                ++checked;
                if (red.holds(std::size_t{0}, {a, b}) != plain.holds(std::size_t{0}, {a, b})) ++mismatches;
            }
        s.status = mismatches == 0 ? "passed" : "failed";
        s.detail = std::to_string(checked) + " pairs compared";
        s.data["pairs"] = checked;
        s.data["mismatches"] = mismatches;
        r.stages.push_back(std::move(s));
    }
    {
        DemoStage s{"5: gammastar obstruction certificates (n = 2)", "", "", {}};
        try {
            auto [swap, fixed] = gamma_star_obstruction(2, prefix_size);
            const bool ok = swap.passed() && fixed.passed() && replay(swap) == swap && replay(fixed) == fixed;
            s.status = ok ? "passed" : "failed";
            s.detail = "transposition and fixed-point certificates verified and replayed";
            s.data["certificates"] = {swap.to_json(), fixed.to_json()};
        } catch (const InvalidInput& e) {
            s.status = "failed";
            s.detail = e.what();
        }
        r.stages.push_back(std::move(s));
    }
    return r;
}

}  // namespace symindiv
