#include "dicola/dicola.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include <json.hpp>

#include "dicola/errors.hpp"
#include "dicola/graph_io.hpp"

namespace dicola {

namespace {

enum class Block { A, B, C };

std::vector<std::string> sorted_names(const std::vector<std::string>& v) {
    auto out = v;
    std::sort(out.begin(), out.end());
    return out;
}

void require_vertices(const UndirectedGraph& g, const std::vector<std::string>& expect, const char* which) {
    if (sorted_names(g.names()) != sorted_names(expect))
        throw ContractError(std::string("merge_skeletons: ") + which + " skeleton has the wrong vertex set");
}

std::vector<std::string> filter(std::span<const std::string> k, const std::unordered_map<std::string, Block>& side,
                                Block drop) {
    std::vector<std::string> out;
    for (const auto& v : k)
        if (side.at(v) != drop) out.push_back(v);
    return out;
}

struct Inherited {
    const UndirectedGraph& uig;
    const std::vector<std::string>& c;
};

RecursiveResult recurse(std::span<const std::string> k, CiTester& tester, const BaseLearner& base,
                        const DicolaOptions& options, const Inherited* inherited = nullptr) {
    RecursiveResult out;
    out.tree.vars.assign(k.begin(), k.end());
    if (k.size() <= 1) {
        out.local.skeleton = UndirectedGraph(out.tree.vars);
        return out;
    }

    DecompositionResult dec;
    if (inherited) {
        auto uig = refine_uig(induced_subgraph(inherited->uig, k), inherited->c, tester);
        dec = decompose_uig(std::move(uig.uig), options.decompose);
        dec.tests_used = uig.tests_used;
    } else {
        dec = find_decomposition(k, tester, options.decompose);
    }
    out.asymmetric_pairs = dec.asymmetric_pairs;
    if (!dec.flag) {
        out.local = base.learn_skeleton(k, tester);
        out.local.tests_used += dec.tests_used;
        return out;
    }

    const Tripartition& p = *dec.partition;
    std::unordered_map<std::string, Block> side;
    for (const auto& v : p.a) side[v] = Block::A;
    for (const auto& v : p.b) side[v] = Block::B;
    for (const auto& v : p.c) side[v] = Block::C;

    const auto left_vars = filter(k, side, Block::B);
    const auto right_vars = filter(k, side, Block::A);
    const Inherited next{dec.uig, p.c};
    const Inherited* pass = options.inherit_uig && !options.decompose.mb ? &next : nullptr;
    auto left = recurse(left_vars, tester, base, options, pass);
    auto right = recurse(right_vars, tester, base, options, pass);
    out.local = merge_skeletons(left.local, right.local, p, k);
    out.local.tests_used = left.local.tests_used + right.local.tests_used + dec.tests_used;
    out.asymmetric_pairs += left.asymmetric_pairs + right.asymmetric_pairs;
    out.tree.split = p;
    out.tree.score = dec.score;
    out.tree.children.push_back(std::move(left.tree));
    out.tree.children.push_back(std::move(right.tree));
    return out;
}

nlohmann::json tree_json(const DecompositionTree& t) {
    nlohmann::json j;
    j["vars"] = t.vars;
    if (t.split) {
        j["a"] = t.split->a;
        j["b"] = t.split->b;
        j["c"] = t.split->c;
        j["score"] = t.score;
        j["children"] = nlohmann::json::array();
        for (const auto& c : t.children) j["children"].push_back(tree_json(c));
    }
    return j;
}

}  // namespace

std::size_t DecompositionTree::num_leaves() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.num_leaves();
    return n;
}

std::size_t DecompositionTree::max_leaf_size() const {
    if (is_leaf()) return vars.size();
    std::size_t m = 0;
    for (const auto& c : children) m = std::max(m, c.max_leaf_size());
    return m;
}

std::vector<std::vector<std::string>> DecompositionTree::leaves() const {
    if (is_leaf()) return {vars};
    std::vector<std::vector<std::string>> out;
    for (const auto& c : children) {
        auto sub = c.leaves();
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

LocalResult merge_skeletons(const LocalResult& lac, const LocalResult& lbc, const Tripartition& p,
                            std::span<const std::string> order) {
    require_vertices(lac.skeleton, p.left(), "left");
    require_vertices(lbc.skeleton, p.right(), "right");

    std::vector<std::string> names;
    if (order.empty()) {
        names = p.a;
        names.insert(names.end(), p.b.begin(), p.b.end());
        names.insert(names.end(), p.c.begin(), p.c.end());
    } else {
        names.assign(order.begin(), order.end());
    }
    LocalResult out{UndirectedGraph(names), {}, lac.tests_used + lbc.tests_used};
    require_vertices(out.skeleton, [&] {
        auto all = p.left();
        all.insert(all.end(), p.b.begin(), p.b.end());
        return all;
    }(), "merged");

    std::unordered_map<std::string, Block> side;
    for (const auto& v : p.a) side[v] = Block::A;
    for (const auto& v : p.b) side[v] = Block::B;
    for (const auto& v : p.c) side[v] = Block::C;

    auto& s = out.skeleton;
    for (const auto* child : {&lac.skeleton, &lbc.skeleton})
        for (auto [u, v] : child->edges()) s.add_edge(child->name(u), child->name(v));
    for (std::size_t i = 0; i < p.c.size(); ++i)
        for (std::size_t j = i + 1; j < p.c.size(); ++j) {
            const auto& x = p.c[i];
            const auto& y = p.c[j];
            if (!lac.skeleton.adjacent(x, y) || !lbc.skeleton.adjacent(x, y))
                if (s.adjacent(x, y)) s.remove_edge(x, y);
        }

    auto inherit = [&](const LocalResult& from, const std::string& x, const std::string& y) {
        const auto* set = from.sepsets.find(x, y);
        if (!set) throw ContractError("merge_skeletons: child has no separating set for " + x + ", " + y);
        out.sepsets.set(x, y, *set);
    };
    for (int i = 0; i < s.size(); ++i)
        for (int j = i + 1; j < s.size(); ++j) {
            if (s.adjacent(i, j)) continue;
            const auto& x = s.name(i);
            const auto& y = s.name(j);
            const Block bx = side.at(x), by = side.at(y);
            if ((bx == Block::A && by == Block::B) || (bx == Block::B && by == Block::A)) {
                out.sepsets.set(x, y, p.c);
            } else if (bx == Block::C && by == Block::C) {
                inherit(lac.skeleton.adjacent(x, y) ? lbc : lac, x, y);
            } else if (bx == Block::A || by == Block::A) {
                inherit(lac, x, y);
            } else {
                inherit(lbc, x, y);
            }
        }
    return out;
}

RecursiveResult recursive_learn(std::span<const std::string> k, CiTester& tester, const BaseLearner& base,
                                const DicolaOptions& options) {
    if (k.empty()) throw InputError("recursive_learn: empty variable set");
    return recurse(k, tester, base, options);
}

std::string RunReport::to_json(bool include_timing, int indent) const {
    nlohmann::json j;
    j["method"] = method;
    j["n"] = n;
    j["n_latent"] = n_latent;
    j["ci_tests"] = ci_tests;
    if (include_timing) j["wall_seconds"] = wall_seconds;
    j["k_max"] = k_max;
    j["num_leaves"] = num_leaves;
    j["tree"] = tree ? tree_json(*tree) : nlohmann::json();
    j["pag"] = pag ? nlohmann::json(write_graph(*pag)) : nlohmann::json();
    if (metrics) {
        j["metrics"] = {{"precision", metrics->precision}, {"recall", metrics->recall}, {"f1", metrics->f1},
                        {"tp", metrics->tp},               {"fp", metrics->fp},         {"fn", metrics->fn}};
    }
    j["asymmetric_pairs"] = asymmetric_pairs;
    j["orientation_conflicts"] = orientation_conflicts;
    j["timed_out"] = timed_out;
    return j.dump(indent);
}

DicolaResult run_dicola(std::span<const std::string> o, CiTester& tester, const BaseLearner& base,
                    const DicolaOptions& options) {
    if (o.empty()) throw InputError("run_dicola: empty variable set");
    const auto start = std::chrono::steady_clock::now();
    const auto tests_before = tester.count();
    DicolaResult out{MixedGraph(GraphKind::Pag, std::vector<std::string>(o.begin(), o.end())), {}};
    auto& r = out.report;
    r.method = "dicola+" + base.name();
    r.n = static_cast<int>(o.size());
    try {
        auto rec = recursive_learn(o, tester, base, options);
        r.asymmetric_pairs = rec.asymmetric_pairs;
        r.k_max = rec.tree.max_leaf_size();
        r.num_leaves = rec.tree.num_leaves();
        r.tree = std::move(rec.tree);
        OrientationStats stats;
        out.pag = base.orient(rec.local, &stats);
        r.orientation_conflicts = stats.conflicts;
        r.pag = out.pag;
    } catch (const TimeoutError&) {
        r.timed_out = true;
    }
    r.ci_tests = tester.count() - tests_before;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

DicolaResult run_base(std::span<const std::string> o, CiTester& tester, const BaseLearner& base) {
    if (o.empty()) throw InputError("empty variable set");
    const auto start = std::chrono::steady_clock::now();
    const auto tests_before = tester.count();
    DicolaResult out{MixedGraph(GraphKind::Pag, std::vector<std::string>(o.begin(), o.end())), {}};
    auto& r = out.report;
    r.method = base.name();
    r.n = static_cast<int>(o.size());
    try {
        auto local = base.learn_skeleton(o, tester);
        OrientationStats stats;
        out.pag = base.orient(local, &stats);
        r.orientation_conflicts = stats.conflicts;
        r.k_max = o.size();
        r.num_leaves = 1;
        r.pag = out.pag;
    } catch (const TimeoutError&) {
        r.timed_out = true;
    }
    r.ci_tests = tester.count() - tests_before;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace dicola
