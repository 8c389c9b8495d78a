#include "fomax/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace fomax {

Term Term::apply(const std::string& fn) const
{
    Term t = *this;
    t.fns.push_back(fn);
    return t;
}

Term Term::apply_n(const std::string& fn, int times) const
{
    Term t = *this;
    for (int i = 0; i < times; ++i)
        t.fns.push_back(fn);
    return t;
}

Term Term::prefix(std::size_t depth) const
{
    assert(depth <= fns.size());
    return Term(var, std::vector<std::string>(fns.begin(), fns.begin() + static_cast<std::ptrdiff_t>(depth)));
}

std::vector<Term> Term::subterms() const
{
    std::vector<Term> out;
    for (std::size_t d = 0; d <= fns.size(); ++d)
        out.push_back(prefix(d));
    return out;
}

bool Term::has_prefix(const Term& sub) const
{
    return var == sub.var && sub.fns.size() <= fns.size() && std::equal(sub.fns.begin(), sub.fns.end(), fns.begin());
}

Term Term::replace_prefix(const Term& sub, const Term& with) const
{
    assert(has_prefix(sub));
    Term out = with;
    out.fns.insert(out.fns.end(), fns.begin() + static_cast<std::ptrdiff_t>(sub.fns.size()), fns.end());
    return out;
}

Term Term::substitute(const std::string& v, const Term& s) const
{
    if (var != v)
        return *this;
    return replace_prefix(Term(var), s);
}

bool term_less(const Term& a, const Term& b)
{
    if (a.fns.size() != b.fns.size())
        return a.fns.size() < b.fns.size();
    if (a.var != b.var)
        return a.var < b.var;
    return a.fns < b.fns;
}

std::string to_string(const Term& t)
{
    std::string out = t.var;
    for (const auto& fn : t.fns)
        out = "(f " + fn + " " + out + ")";
    return out;
}

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

const FormulaPtr& true_node()
{
    static const FormulaPtr node = make(Formula{Op::True, {}, {}, 0, 0, {}, {}});
    return node;
}

const FormulaPtr& false_node()
{
    static const FormulaPtr node = make(Formula{Op::False, {}, {}, 0, 0, {}, {}});
    return node;
}

FormulaPtr make_junction(Op op, std::vector<FormulaPtr> fs)
{
    const Op absorbing = op == Op::And ? Op::False : Op::True;
    const Op neutral = op == Op::And ? Op::True : Op::False;
    std::vector<FormulaPtr> flat;
    flat.reserve(fs.size());
    for (auto& f : fs) {
        if (f->op == absorbing)
            return absorbing == Op::True ? true_node() : false_node();
        if (f->op == neutral)
            continue;
        if (f->op == op) {
            flat.insert(flat.end(), f->kids.begin(), f->kids.end());
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (flat.empty())
        return neutral == Op::True ? true_node() : false_node();
    if (flat.size() == 1)
        return flat.front();
    Formula out;
    out.op = op;
    out.kids = std::move(flat);
    return make(std::move(out));
}

}  // namespace

FormulaPtr mk_true() { return true_node(); }
FormulaPtr mk_false() { return false_node(); }
FormulaPtr mk_bool(bool value) { return value ? true_node() : false_node(); }

FormulaPtr mk_not(FormulaPtr f)
{
    if (f->op == Op::True)
        return false_node();
    if (f->op == Op::False)
        return true_node();
    if (f->op == Op::Not)
        return f->kids[0];
    Formula out;
    out.op = Op::Not;
    out.kids.push_back(std::move(f));
    return make(std::move(out));
}

FormulaPtr mk_and(std::vector<FormulaPtr> fs) { return make_junction(Op::And, std::move(fs)); }
FormulaPtr mk_or(std::vector<FormulaPtr> fs) { return make_junction(Op::Or, std::move(fs)); }
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_and(std::vector<FormulaPtr>{std::move(a), std::move(b)}); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_or(std::vector<FormulaPtr>{std::move(a), std::move(b)}); }
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) { return mk_or(mk_not(std::move(a)), std::move(b)); }

FormulaPtr mk_forall(std::string var, FormulaPtr body)
{
    Formula out;
    out.op = Op::Forall;
    out.name = std::move(var);
    out.kids.push_back(std::move(body));
    return make(std::move(out));
}

FormulaPtr mk_exists(std::string var, FormulaPtr body)
{
    Formula out;
    out.op = Op::Exists;
    out.name = std::move(var);
    out.kids.push_back(std::move(body));
    return make(std::move(out));
}

FormulaPtr mk_eq(Term a, Term b)
{
    Formula out;
    out.op = Op::Eq;
    out.t1 = std::move(a);
    out.t2 = std::move(b);
    return make(std::move(out));
}

FormulaPtr mk_neq(Term a, Term b) { return mk_not(mk_eq(std::move(a), std::move(b))); }

FormulaPtr mk_adj(Term a, Term b)
{
    Formula out;
    out.op = Op::Adj;
    out.t1 = std::move(a);
    out.t2 = std::move(b);
    return make(std::move(out));
}

FormulaPtr mk_set(int index, Term t)
{
    Formula out;
    out.op = Op::Set;
    out.index = index;
    out.t1 = std::move(t);
    return make(std::move(out));
}

FormulaPtr mk_pred(std::string symbol, Term t)
{
    Formula out;
    out.op = Op::Pred;
    out.name = std::move(symbol);
    out.t1 = std::move(t);
    return make(std::move(out));
}

FormulaPtr mk_counter_ge(std::string counter, Term t, std::int64_t m)
{
    if (m <= 0)
        return true_node();
    Formula out;
    out.op = Op::CounterGe;
    out.name = std::move(counter);
    out.t1 = std::move(t);
    out.threshold = m;
    return make(std::move(out));
}

FormulaPtr mk_card_ge(FormulaPtr theta, std::int64_t m)
{
    if (m <= 0)
        return true_node();
    if (theta->op == Op::False)
        return false_node();
    Formula out;
    out.op = Op::CardGe;
    out.kids.push_back(std::move(theta));
    out.threshold = m;
    return make(std::move(out));
}

namespace {

void print_into(const Formula& f, std::string& out)
{
    switch (f.op) {
    case Op::True:
        out += "(true)";
        return;
    case Op::False:
        out += "(false)";
        return;
    case Op::Not:
        out += "(not ";
        print_into(*f.kids[0], out);
        out += ')';
        return;
    case Op::And:
    case Op::Or:
        out += f.op == Op::And ? "(and" : "(or";
        for (const auto& k : f.kids) {
            out += ' ';
            print_into(*k, out);
        }
        out += ')';
        return;
    case Op::Forall:
    case Op::Exists:
        out += f.op == Op::Forall ? "(forall " : "(exists ";
        out += f.name;
        out += ' ';
        print_into(*f.kids[0], out);
        out += ')';
        return;
    case Op::Eq:
    case Op::Adj:
        out += f.op == Op::Eq ? "(eq " : "(E ";
        out += to_string(f.t1);
        out += ' ';
        out += to_string(f.t2);
        out += ')';
        return;
    case Op::Set:
        out += "(X " + std::to_string(f.index) + " " + to_string(f.t1) + ")";
        return;
    case Op::Pred:
        out += "(P " + f.name + " " + to_string(f.t1) + ")";
        return;
    case Op::CounterGe:
        out += "(cge " + f.name + " " + to_string(f.t1) + " " + std::to_string(f.threshold) + ")";
        return;
    case Op::CardGe:
        out += "(card-ge ";
        print_into(*f.kids[0], out);
        out += " " + std::to_string(f.threshold) + ")";
        return;
    }
}

template <typename Fn>
void visit_atoms_outside_card(const Formula& f, Fn&& fn)
{
    if (f.op == Op::CardGe) {
        fn(f);
        return;
    }
    if (f.is_atom()) {
        fn(f);
        return;
    }
    for (const auto& k : f.kids)
        visit_atoms_outside_card(*k, fn);
}

}  // namespace

std::string print(const Formula& f)
{
    std::string out;
    print_into(f, out);
    return out;
}

bool structurally_equal(const Formula& a, const Formula& b)
{
    if (a.op != b.op || a.name != b.name || a.index != b.index || a.threshold != b.threshold || !(a.t1 == b.t1) ||
        !(a.t2 == b.t2) || a.kids.size() != b.kids.size())
        return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!structurally_equal(*a.kids[i], *b.kids[i]))
            return false;
    return true;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out)
{
    switch (f.op) {
    case Op::CardGe:
    case Op::True:
    case Op::False:
        return;
    case Op::Forall:
    case Op::Exists: {
        bool fresh = bound.insert(f.name).second;
        collect_free(*f.kids[0], bound, out);
        if (fresh)
            bound.erase(f.name);
        return;
    }
    case Op::Eq:
    case Op::Adj:
        if (!bound.count(f.t2.var))
            out.insert(f.t2.var);
        [[fallthrough]];
    case Op::Set:
    case Op::Pred:
    case Op::CounterGe:
        if (!bound.count(f.t1.var))
            out.insert(f.t1.var);
        return;
    case Op::Not:
    case Op::And:
    case Op::Or:
        for (const auto& k : f.kids)
            collect_free(*k, bound, out);
        return;
    }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f)
{
    std::set<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

TermSet term_set(const Formula& f)
{
    TermSet out;
    auto add = [&](const Term& t) {
        for (auto& s : t.subterms())
            out.insert(s);
    };
    visit_atoms_outside_card(f, [&](const Formula& atom) {
        switch (atom.op) {
        case Op::Eq:
        case Op::Adj:
            add(atom.t1);
            add(atom.t2);
            break;
        case Op::Set:
        case Op::Pred:
        case Op::CounterGe:
            add(atom.t1);
            break;
        default:
            break;
        }
    });
    return out;
}

bool mentions_var(const Formula& f, const std::string& var) { return free_vars(f).count(var) > 0; }

namespace {

FormulaPtr rebuild_terms(const FormulaPtr& f, const std::function<Term(const Term&)>& map_term,
                         const std::string& stop_var)
{
    switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::CardGe:
        return f;
    case Op::Forall:
    case Op::Exists:
        if (!stop_var.empty() && f->name == stop_var)
            return f;
        {
            auto body = rebuild_terms(f->kids[0], map_term, stop_var);
            if (body == f->kids[0])
                return f;
            return f->op == Op::Forall ? mk_forall(f->name, body) : mk_exists(f->name, body);
        }
    case Op::Not:
        return mk_not(rebuild_terms(f->kids[0], map_term, stop_var));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids)
            kids.push_back(rebuild_terms(k, map_term, stop_var));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Op::Eq:
        return mk_eq(map_term(f->t1), map_term(f->t2));
    case Op::Adj:
        return mk_adj(map_term(f->t1), map_term(f->t2));
    case Op::Set:
        return mk_set(f->index, map_term(f->t1));
    case Op::Pred:
        return mk_pred(f->name, map_term(f->t1));
    case Op::CounterGe:
        return mk_counter_ge(f->name, map_term(f->t1), f->threshold);
    }
    return f;
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& with)
{
    return rebuild_terms(
        f, [&](const Term& t) { return t.substitute(var, with); }, var);
}

FormulaPtr replace_subterm(const FormulaPtr& f, const Term& sub, const Term& with)
{
    return rebuild_terms(
        f, [&](const Term& t) { return t.has_prefix(sub) ? t.replace_prefix(sub, with) : t; }, sub.var);
}

std::int64_t max_constant(const Formula& f)
{
    std::int64_t best = 0;
    if (f.op == Op::CounterGe || f.op == Op::CardGe)
        best = f.threshold;
    for (const auto& k : f.kids)
        best = std::max(best, max_constant(*k));
    return best;
}

namespace {

bool x_local_rec(const Formula& f, std::string& var)
{
    auto check_term = [&](const Term& t) {
        if (!t.fns.empty())
            return false;
        if (var.empty())
            var = t.var;
        return var == t.var;
    };
    switch (f.op) {
    case Op::True:
    case Op::False:
        return true;
    case Op::Forall:
    case Op::Exists:
    case Op::CardGe:
        return false;
    case Op::Not:
    case Op::And:
    case Op::Or:
        for (const auto& k : f.kids)
            if (!x_local_rec(*k, var))
                return false;
        return true;
    case Op::Eq:
    case Op::Adj:
        return check_term(f.t1) && check_term(f.t2);
    case Op::Set:
    case Op::Pred:
    case Op::CounterGe:
        return check_term(f.t1);
    }
    return false;
}

}  // namespace

bool is_x_local(const Formula& f)
{
    std::string var;
    return x_local_rec(f, var);
}

std::string local_var(const Formula& f)
{
    std::string var;
    x_local_rec(f, var);
    return var;
}

bool is_quantifier_free(const Formula& f)
{
    if (f.op == Op::Forall || f.op == Op::Exists)
        return false;
    if (f.op == Op::CardGe)
        return true;
    for (const auto& k : f.kids)
        if (!is_quantifier_free(*k))
            return false;
    return true;
}

bool contains_op(const Formula& f, Op op)
{
    if (f.op == op)
        return true;
    for (const auto& k : f.kids)
        if (contains_op(*k, op))
            return true;
    return false;
}

std::vector<FormulaPtr> card_atoms(const FormulaPtr& f)
{
    std::vector<FormulaPtr> out;
    std::unordered_set<std::string> seen;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (g->op == Op::CardGe) {
            if (seen.insert(print(*g)).second)
                out.push_back(g);
            return;
        }
        for (const auto& k : g->kids)
            walk(k);
    };
    walk(f);
    return out;
}

}  // namespace fomax
