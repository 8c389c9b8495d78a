#include "fomax/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "fomax/errors.hpp"

namespace fomax {

namespace {

struct Token {
    enum Kind { Open, Close, Atom, End } kind = End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next()
    {
        skip_blank();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size())
            return t;
        char c = src_[pos_];
        if (c == '(' || c == ')') {
            advance();
            t.kind = c == '(' ? Token::Open : Token::Close;
            return t;
        }
        t.kind = Token::Atom;
        while (pos_ < src_.size()) {
            char d = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';')
                break;
            t.text.push_back(d);
            advance();
        }
        return t;
    }

private:
    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' || c == '.';
    });
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<int>* indices) : lex_(src), indices_(indices) { shift(); }

    FormulaPtr parse_top()
    {
        FormulaPtr f = formula();
        if (cur_.kind != Token::End)
            fail("trailing input after formula");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, cur_.line, cur_.column); }
    [[noreturn]] static void fail_at(const Token& t, const std::string& what) { throw ParseError(what, t.line, t.column); }

    void shift() { cur_ = lex_.next(); }

    void expect_close()
    {
        if (cur_.kind != Token::Close)
            fail(cur_.kind == Token::End ? "unexpected end of input, expected ')'" : "expected ')'");
        shift();
    }

    std::string identifier(const char* role)
    {
        if (cur_.kind != Token::Atom || !is_identifier(cur_.text))
            fail(std::string("expected ") + role);
        std::string s = cur_.text;
        shift();
        return s;
    }

    std::int64_t integer(const char* role)
    {
        if (cur_.kind != Token::Atom)
            fail(std::string("expected ") + role);
        std::int64_t v = 0;
        const auto& s = cur_.text;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            fail(std::string("expected ") + role + ", got '" + s + "'");
        shift();
        return v;
    }

    Term term()
    {
        if (cur_.kind == Token::Atom) {
            if (!is_identifier(cur_.text))
                fail("expected variable, got '" + cur_.text + "'");
            Term t(cur_.text);
            shift();
            return t;
        }
        if (cur_.kind != Token::Open)
            fail("expected term");
        shift();
        if (cur_.kind != Token::Atom || cur_.text != "f")
            fail("expected 'f' in function application");
        shift();
        std::string fn = identifier("function name");
        Term inner = term();
        expect_close();
        return inner.apply(fn);
    }

    FormulaPtr formula()
    {
        if (cur_.kind == Token::Atom) {
            if (cur_.text == "true" || cur_.text == "false") {
                bool v = cur_.text == "true";
                shift();
                return mk_bool(v);
            }
            fail("expected '(' or true/false, got '" + cur_.text + "'");
        }
        if (cur_.kind != Token::Open)
            fail(cur_.kind == Token::End ? "unexpected end of input" : "unexpected ')'");
        shift();
        if (cur_.kind != Token::Atom)
            fail("expected operator");
        Token op_tok = cur_;
        const std::string op = cur_.text;
        shift();
        FormulaPtr out;
        if (op == "true" || op == "false") {
            out = mk_bool(op == "true");
        } else if (op == "forall" || op == "exists") {
            std::vector<std::string> vars;
            vars.push_back(identifier("bound variable"));
            while (cur_.kind == Token::Atom)
                vars.push_back(identifier("bound variable"));
            FormulaPtr body = formula();
            for (auto it = vars.rbegin(); it != vars.rend(); ++it)
                body = op == "forall" ? mk_forall(*it, body) : mk_exists(*it, body);
            out = body;
        } else if (op == "and" || op == "or") {
            std::vector<FormulaPtr> kids;
            while (cur_.kind != Token::Close && cur_.kind != Token::End)
                kids.push_back(formula());
            out = op == "and" ? mk_and(std::move(kids)) : mk_or(std::move(kids));
        } else if (op == "not") {
            out = mk_not(formula());
        } else if (op == "implies") {
            FormulaPtr a = formula();
            FormulaPtr b = formula();
            out = mk_implies(a, b);
        } else if (op == "iff") {
            FormulaPtr a = formula();
            FormulaPtr b = formula();
            out = mk_or(mk_and(a, b), mk_and(mk_not(a), mk_not(b)));
        } else if (op == "eq" || op == "E") {
            Term a = term();
            Term b = term();
            out = op == "eq" ? mk_eq(a, b) : mk_adj(a, b);
        } else if (op == "X") {
            Token idx_tok = cur_;
            std::int64_t idx = integer("set index");
            if (idx < 0 || idx > 1'000'000)
                fail_at(idx_tok, "set index out of range");
            if (indices_ && !std::binary_search(indices_->begin(), indices_->end(), static_cast<int>(idx)))
                fail_at(idx_tok, "unknown set index " + std::to_string(idx));
            out = mk_set(static_cast<int>(idx), term());
        } else if (op == "P") {
            std::string name = identifier("predicate name");
            out = mk_pred(name, term());
        } else if (op == "cge") {
            std::string name = identifier("counter name");
            Term t = term();
            Token m_tok = cur_;
            std::int64_t m = integer("threshold");
            if (m < 1)
                fail_at(m_tok, "threshold must be positive");
            out = mk_counter_ge(name, t, m);
        } else if (op == "card-ge") {
            Token th_tok = cur_;
            FormulaPtr theta = formula();
            if (!is_x_local(*theta))
                fail_at(th_tok, "card-ge body must be quantifier-free, function-free, with one variable");
            Token m_tok = cur_;
            std::int64_t m = integer("threshold");
            if (m < 1)
                fail_at(m_tok, "threshold must be positive");
            out = mk_card_ge(theta, m);
        } else {
            fail_at(op_tok, "unknown operator '" + op + "'");
        }
        expect_close();
        return out;
    }

    Lexer lex_;
    const std::vector<int>* indices_;
    Token cur_;
};

void collect_indices(const Formula& f, std::set<int>& out)
{
    if (f.op == Op::Set)
        out.insert(f.index);
    for (const auto& k : f.kids)
        collect_indices(*k, out);
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const std::vector<int>* indices)
{
    Parser p(text, indices);
    return p.parse_top();
}

FormulaPtr parse_sentence(std::string_view text, const std::vector<int>& indices)
{
    FormulaPtr f = parse_formula(text, &indices);
    auto fv = free_vars(*f);
    if (!fv.empty())
        throw InputError("formula is not a sentence: free variable '" + *fv.begin() + "'");
    return f;
}

std::vector<int> indices_used(const Formula& f)
{
    std::set<int> s;
    collect_indices(f, s);
    return {s.begin(), s.end()};
}

}  // namespace fomax
