#include "treeparse/io.hpp"
#include "treeparse/traversal.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace treeparse;

namespace {

TermPtr atom(const std::string& s) { return Term::atom(s); }

TravTreePtr leaf(const std::string& s) { return trav_node(atom(s)); }

std::vector<std::string> texts(const std::vector<TermPtr>& labels) {
    std::vector<std::string> out;
    for (const auto& l : labels)
        out.push_back(print_term(l, PrintStyle::Canonical));
    return out;
}

// Independent oracle: enumerate every tree with the right number of nodes
// over the label multiset, keep those whose traversal matches.
std::vector<TravTreePtr> brute_force_invert(Order order,
                                            const std::vector<TermPtr>& labels) {
    std::vector<TravTreePtr> all;
    std::function<std::vector<TravTreePtr>(std::vector<TermPtr>)> enumerate =
        [&](std::vector<TermPtr> pool) -> std::vector<TravTreePtr> {
        if (pool.empty())
            return {nullptr};
        std::vector<TravTreePtr> out;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            TermPtr root = pool[i];
            std::vector<TermPtr> rest = pool;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            // every way to split the remaining labels between the subtrees
            std::size_t n = rest.size();
            for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
                std::vector<TermPtr> ls, rs;
                for (std::size_t k = 0; k < n; ++k)
                    ((mask >> k) & 1 ? ls : rs).push_back(rest[k]);
                for (const auto& l : enumerate(ls))
                    for (const auto& r : enumerate(rs))
                        out.push_back(trav_node(root, l, r));
            }
        }
        return out;
    };
    std::set<std::string> seen;
    std::vector<TravTreePtr> matches;
    for (const auto& t : enumerate(labels)) {
        auto trav = traverse(order, t);
        if (texts(trav) != texts(labels))
            continue;
        std::string key = print_term(travtree_to_term(t), PrintStyle::Canonical);
        if (seen.insert(key).second)
            matches.push_back(t);
    }
    return matches;
}

bool same_tree_set(std::vector<TravTreePtr> a, std::vector<TravTreePtr> b) {
    auto key = [](const TravTreePtr& t) {
        return print_term(travtree_to_term(t), PrintStyle::Canonical);
    };
    std::vector<std::string> ka, kb;
    for (const auto& t : a)
        ka.push_back(key(t));
    for (const auto& t : b)
        kb.push_back(key(t));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

} // namespace

TEST_CASE("traversal orders of a three-node tree") {
    TravTreePtr t = trav_node(atom("a"), leaf("b"), leaf("c"));
    CHECK(texts(traverse(Order::Pre, t)) ==
          std::vector<std::string>{"a", "b", "c"});
    CHECK(texts(traverse(Order::Post, t)) ==
          std::vector<std::string>{"b", "c", "a"});
    CHECK(texts(traverse(Order::In, t)) ==
          std::vector<std::string>{"b", "a", "c"});
    CHECK(traverse(Order::Pre, nullptr).empty());
}

TEST_CASE("inverting the empty sequence yields only the empty tree") {
    for (Order o : {Order::Pre, Order::Post, Order::In}) {
        auto trees = invert(o, {});
        REQUIRE(trees.size() == 1);
        CHECK(trees[0] == nullptr);
    }
}

TEST_CASE("invert matches the brute-force oracle") {
    std::vector<std::vector<std::string>> inputs = {
        {"a", "b", "c"}, {"a", "a"}, {"a", "b", "a"},
        {"x"},           {},         {"a", "b", "c", "d"}};
    for (const auto& labels_s : inputs) {
        std::vector<TermPtr> labels;
        for (const auto& s : labels_s)
            labels.push_back(atom(s));
        for (Order o : {Order::Pre, Order::Post, Order::In})
            CHECK(same_tree_set(invert(o, labels),
                                brute_force_invert(o, labels)));
    }
}

TEST_CASE("inorder inversion of a,b,c contains the balanced tree") {
    auto trees = invert(Order::In, {atom("a"), atom("b"), atom("c")});
    CHECK(trees.size() == 5);
    TravTreePtr balanced = trav_node(atom("b"), leaf("a"), leaf("c"));
    CHECK(std::any_of(trees.begin(), trees.end(), [&](const TravTreePtr& t) {
        return travtree_eq(t, balanced);
    }));
}

TEST_CASE("postorder inversion of a,a yields the two chains") {
    auto trees = invert(Order::Post, {atom("a"), atom("a")});
    REQUIRE(trees.size() == 2);
    TravTreePtr left_chain = trav_node(atom("a"), leaf("a"), nullptr);
    TravTreePtr right_chain = trav_node(atom("a"), nullptr, leaf("a"));
    CHECK(same_tree_set(trees, {left_chain, right_chain}));
}

TEST_CASE("counting: |invert| is the Catalan number of the length") {
    const std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42};
    for (std::size_t n = 0; n < catalan.size(); ++n) {
        std::vector<TermPtr> labels;
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back(atom("l" + std::to_string(i)));
        for (Order o : {Order::Pre, Order::Post, Order::In})
            CHECK(invert(o, labels).size() == catalan[n]);
    }
}

TEST_CASE("round trip: every small tree is among its own inversions") {
    // All trees with <= 5 nodes over a two-letter alphabet.
    std::function<std::vector<TravTreePtr>(int)> trees_of = [&](int n) {
        std::vector<TravTreePtr> out;
        if (n == 0) {
            out.push_back(nullptr);
            return out;
        }
        for (int k = 0; k < n; ++k)
            for (const auto& l : trees_of(k))
                for (const auto& r : trees_of(n - 1 - k))
                    for (const char* lab : {"a", "b"})
                        out.push_back(trav_node(atom(lab), l, r));
        return out;
    };
    for (int n = 0; n <= 5; ++n) {
        for (const auto& t : trees_of(n)) {
            for (Order o : {Order::Pre, Order::Post, Order::In}) {
                auto inverted = invert(o, traverse(o, t));
                CHECK(std::any_of(
                    inverted.begin(), inverted.end(),
                    [&](const TravTreePtr& u) { return travtree_eq(u, t); }));
            }
        }
    }
}

TEST_CASE("soundness and no duplicates") {
    std::vector<TermPtr> labels{atom("a"), atom("b"), atom("a"), atom("b")};
    for (Order o : {Order::Pre, Order::Post, Order::In}) {
        auto trees = invert(o, labels);
        std::set<std::string> seen;
        for (const auto& t : trees) {
            CHECK(texts(traverse(o, t)) == texts(labels));
            CHECK(seen
                      .insert(print_term(travtree_to_term(t),
                                         PrintStyle::Canonical))
                      .second);
        }
    }
}

TEST_CASE("tree terms convert both ways") {
    TravTreePtr t = trav_node(atom("a"), leaf("b"), nullptr);
    TermPtr enc = travtree_to_term(t);
    CHECK(print_term(enc) == "node(a,node(b,empty,empty),empty)");
    auto back = term_to_travtree(enc);
    REQUIRE(back);
    CHECK(travtree_eq(*back, t));
    CHECK_FALSE(term_to_travtree(read_term("node(a,b)")));
}
