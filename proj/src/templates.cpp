#include "fomax/templates.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fomax/errors.hpp"

namespace fomax {

int Template::node_of(const Term& t) const
{
    for (const auto& [term, node] : placement)
        if (term == t)
            return node;
    return -1;
}

int Template::depth(int node) const
{
    int d = 0;
    while (parent[static_cast<std::size_t>(node)] >= 0) {
        node = parent[static_cast<std::size_t>(node)];
        ++d;
    }
    return d;
}

int Template::levels() const
{
    int best = 0;
    for (int v = 0; v < size(); ++v)
        best = std::max(best, depth(v) + 1);
    return best;
}

int Template::root_of(int node) const
{
    while (parent[static_cast<std::size_t>(node)] >= 0)
        node = parent[static_cast<std::size_t>(node)];
    return node;
}

bool Template::is_ancestor_or_self(int anc, int node) const
{
    for (int v = node; v >= 0; v = parent[static_cast<std::size_t>(v)])
        if (v == anc)
            return true;
    return false;
}

int Template::nca(int a, int b) const
{
    for (int v = a; v >= 0; v = parent[static_cast<std::size_t>(v)])
        if (is_ancestor_or_self(v, b))
            return v;
    return -1;
}

std::vector<int> Template::children(int node) const
{
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (parent[static_cast<std::size_t>(v)] == node)
            out.push_back(v);
    return out;
}

std::vector<Term> Template::terms() const
{
    std::vector<Term> out;
    for (const auto& p : placement)
        out.push_back(p.first);
    return out;
}

namespace {

std::vector<std::string> node_strings(const Template& t)
{
    const int n = t.size();
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(n));
    for (const auto& [term, node] : t.placement)
        labels[static_cast<std::size_t>(node)].push_back(to_string(term));
    std::vector<std::string> memo(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> kids(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        if (t.parent[static_cast<std::size_t>(v)] >= 0)
            kids[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])].push_back(v);
    std::function<const std::string&(int)> build = [&](int v) -> const std::string& {
        auto& out = memo[static_cast<std::size_t>(v)];
        if (!out.empty())
            return out;
        auto lab = labels[static_cast<std::size_t>(v)];
        std::sort(lab.begin(), lab.end());
        std::vector<std::string> cs;
        for (int c : kids[static_cast<std::size_t>(v)])
            cs.push_back(build(c));
        std::sort(cs.begin(), cs.end());
        std::string s = "[";
        for (std::size_t i = 0; i < lab.size(); ++i)
            s += (i ? "," : "") + lab[i];
        s += ";";
        for (const auto& c : cs)
            s += c;
        s += "]";
        out = std::move(s);
        return out;
    };
    for (int v = 0; v < n; ++v)
        build(v);
    return memo;
}

}  // namespace

std::string Template::canonical() const
{
    auto strs = node_strings(*this);
    std::vector<std::string> roots;
    for (int v = 0; v < size(); ++v)
        if (parent[static_cast<std::size_t>(v)] < 0)
            roots.push_back(strs[static_cast<std::size_t>(v)]);
    std::sort(roots.begin(), roots.end());
    std::string out;
    for (const auto& r : roots)
        out += r;
    return out;
}

std::string Template::to_string() const
{
    std::string out = "parents";
    for (int p : parent)
        out += " " + std::to_string(p);
    out += " |";
    for (const auto& [term, node] : placement)
        out += " " + fomax::to_string(term) + "->" + std::to_string(node);
    return out;
}

Template canonicalize(const Template& t)
{
    auto strs = node_strings(t);
    std::vector<int> order;
    std::vector<int> roots;
    for (int v = 0; v < t.size(); ++v)
        if (t.parent[static_cast<std::size_t>(v)] < 0)
            roots.push_back(v);
    auto by_string = [&](int a, int b) {
        const auto& sa = strs[static_cast<std::size_t>(a)];
        const auto& sb = strs[static_cast<std::size_t>(b)];
        return sa != sb ? sa < sb : a < b;
    };
    std::sort(roots.begin(), roots.end(), by_string);
    std::function<void(int)> visit = [&](int v) {
        order.push_back(v);
        auto kids = t.children(v);
        std::sort(kids.begin(), kids.end(), by_string);
        for (int c : kids)
            visit(c);
    };
    for (int r : roots)
        visit(r);
    std::vector<int> relabel(static_cast<std::size_t>(t.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
        relabel[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    Template out;
    out.parent.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        int p = t.parent[static_cast<std::size_t>(order[i])];
        out.parent[i] = p < 0 ? -1 : relabel[static_cast<std::size_t>(p)];
    }
    for (const auto& [term, node] : t.placement)
        out.placement.emplace_back(term, relabel[static_cast<std::size_t>(node)]);
    std::sort(out.placement.begin(), out.placement.end(),
              [](const auto& a, const auto& b) { return term_less(a.first, b.first); });
    return out;
}

std::optional<std::string> check_template(const Template& t)
{
    std::vector<bool> image(static_cast<std::size_t>(t.size()), false);
    for (const auto& [term, node] : t.placement) {
        if (node < 0 || node >= t.size())
            return "term " + to_string(term) + " placed outside Q";
        image[static_cast<std::size_t>(node)] = true;
    }
    for (int v = 0; v < t.size(); ++v)
        if (t.children(v).empty() && !image[static_cast<std::size_t>(v)])
            return "leaf " + std::to_string(v) + " carries no term";
    for (const auto& [term, node] : t.placement) {
        if (term.fns.empty())
            continue;
        int inner = t.node_of(term.prefix(term.fns.size() - 1));
        if (inner < 0)
            continue;
        if (!t.is_ancestor_or_self(inner, node) && !t.is_ancestor_or_self(node, inner))
            return "guard-consistency fails for " + to_string(term);
    }
    return std::nullopt;
}

std::vector<Template> enumerate_templates(const TermSet& x, int levels, std::size_t cap)
{
    std::vector<Term> terms(x.begin(), x.end());
    std::map<std::string, Template> found;
    Template work;
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (i == terms.size()) {
            if (check_template(work))
                return;
            Template c = canonicalize(work);
            std::string key = c.canonical();
            if (found.emplace(key, std::move(c)).second && found.size() > cap)
                throw GuardError("template enumeration exceeds " + std::to_string(cap));
            return;
        }
        const Term& t = terms[i];
        // Onto an existing node.
        for (int v = 0; v < work.size(); ++v) {
            work.placement.emplace_back(t, v);
            place(i + 1);
            work.placement.pop_back();
        }
        // Onto the end of a fresh chain hanging below an existing node or
        // starting a new root.
        for (int anchor = -1; anchor < work.size(); ++anchor) {
            int base = anchor < 0 ? 0 : work.depth(anchor) + 1;
            for (int len = 1; base + len <= levels; ++len) {
                const std::size_t before = work.parent.size();
                int prev = anchor;
                for (int k = 0; k < len; ++k) {
                    work.parent.push_back(prev);
                    prev = static_cast<int>(work.parent.size()) - 1;
                }
                work.placement.emplace_back(t, prev);
                place(i + 1);
                work.placement.pop_back();
                work.parent.resize(before);
            }
        }
    };
    place(0);
    std::vector<Template> out;
    for (auto& [key, t] : found)
        out.push_back(std::move(t));
    return out;
}

FormulaPtr template_match_formula(const Template& t, const std::string& in_f, const std::string& prt_f)
{
    std::vector<FormulaPtr> parts;
    auto up = [&](const Term& term, int k) { return term.apply_n(prt_f, k); };
    const auto& pl = t.placement;
    for (const auto& [term, node] : pl)
        parts.push_back(mk_pred(in_f, term));
    for (const auto& [term, node] : pl) {
        int k = t.depth(node);
        for (int i = 0; i < k; ++i)
            parts.push_back(mk_neq(up(term, i), up(term, i + 1)));
        parts.push_back(mk_eq(up(term, k), up(term, k + 1)));
    }
    for (std::size_t a = 0; a < pl.size(); ++a)
        for (std::size_t b = a + 1; b < pl.size(); ++b) {
            const auto& [t1, n1] = pl[a];
            const auto& [t2, n2] = pl[b];
            int k1 = t.depth(n1);
            int k2 = t.depth(n2);
            int c = t.nca(n1, n2);
            if (c >= 0) {
                int k = t.depth(c);
                for (int i = k + 1; i <= std::min(k1, k2); ++i)
                    parts.push_back(mk_neq(up(t1, k1 - i), up(t2, k2 - i)));
                parts.push_back(mk_eq(up(t1, k1 - k), up(t2, k2 - k)));
            } else {
                parts.push_back(mk_neq(up(t1, k1), up(t2, k2)));
            }
        }
    return mk_and(std::move(parts));
}

Vertex term_value(const Interpretation& interp, const Term& t, const std::map<std::string, Vertex>& env)
{
    auto it = env.find(t.var);
    if (it == env.end())
        throw LogicError("unbound variable '" + t.var + "'");
    Vertex v = it->second;
    for (const auto& fn : t.fns)
        v = interp.func(fn)[static_cast<std::size_t>(v)];
    return v;
}

std::optional<Template> induced_template(const Scaffolding& f, const std::vector<Term>& x,
                                         const std::vector<Vertex>& values)
{
    std::map<Vertex, int> node;
    Template out;
    std::function<int(Vertex)> intern = [&](Vertex v) -> int {
        auto it = node.find(v);
        if (it != node.end())
            return it->second;
        Vertex p = f.parent[static_cast<std::size_t>(v)];
        int pid = p == v ? -1 : intern(p);
        int id = out.size();
        out.parent.push_back(pid);
        node.emplace(v, id);
        return id;
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!f.contains(values[i]))
            return std::nullopt;
        out.placement.emplace_back(x[i], intern(values[i]));
    }
    return canonicalize(out);
}

bool matches_template(const Scaffolding& f, const Template& t, const Interpretation& interp,
                      const std::map<std::string, Vertex>& env)
{
    // Every node is an ancestor of a placed node, so the embedding is forced:
    // h(y) is the ancestor of t(env) at distance depth(mu(t)) - depth(y).
    std::vector<Vertex> h(static_cast<std::size_t>(t.size()), -1);
    for (const auto& [term, node] : t.placement) {
        Vertex v = term_value(interp, term, env);
        if (!f.contains(v) || f.depth[static_cast<std::size_t>(v)] - 1 != t.depth(node))
            return false;
        for (int y = node; y >= 0; y = t.parent[static_cast<std::size_t>(y)]) {
            auto& slot = h[static_cast<std::size_t>(y)];
            if (slot >= 0 && slot != v)
                return false;
            slot = v;
            v = f.parent[static_cast<std::size_t>(v)];
        }
    }
    std::set<Vertex> used;
    for (Vertex v : h)
        if (v < 0 || !used.insert(v).second)
            return false;
    return true;
}

}  // namespace fomax
