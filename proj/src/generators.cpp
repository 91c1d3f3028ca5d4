#include "idiomval/generators.hpp"

#include <algorithm>
#include <set>

namespace idiomval {

namespace {

std::vector<Symbol> repeat(const std::string& var, std::size_t times)
{
    return std::vector<Symbol>(times, Symbol::var(var));
}

void append(std::vector<Symbol>& out, std::vector<Symbol> more)
{
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

void check_alphabet(std::span<const Terminal> alphabet, const char* what)
{
    if (alphabet.empty()) {
        throw InvalidParams(std::string(what) + ": alphabet must be nonempty");
    }
    std::set<Terminal> seen(alphabet.begin(), alphabet.end());
    if (seen.size() != alphabet.size()) {
        throw InvalidParams(std::string(what) + ": alphabet has duplicate symbols");
    }
}

void check_position(std::size_t n, std::size_t i, const char* what)
{
    if (n == 0) {
        throw InvalidParams(std::string(what) + ": width must be positive");
    }
    if (i < 1 || i > n) {
        throw InvalidParams(std::string(what) + ": position " + std::to_string(i) + " outside 1.." +
                            std::to_string(n));
    }
}

}  // namespace

Terminal digit_symbol(unsigned d)
{
    if (d >= 36) {
        throw InvalidParams("digit value out of range");
    }
    return Terminal::byte(static_cast<std::uint8_t>(d < 10 ? '0' + d : 'a' + (d - 10)));
}

std::vector<Terminal> LenParams::digit_alphabet() const
{
    std::vector<Terminal> out;
    for (unsigned d = 0; d < base; ++d) {
        out.push_back(digit_symbol(d));
    }
    return out;
}

void LenParams::check() const
{
    if (width == 0) {
        throw InvalidParams("length field width must be positive");
    }
    if (base < 2 || base > 36) {
        throw InvalidParams("base must be in 2..36");
    }
    check_alphabet(body_alphabet, "body");
    if (delimiter) {
        auto digits = digit_alphabet();
        if (std::find(digits.begin(), digits.end(), *delimiter) != digits.end() ||
            std::find(body_alphabet.begin(), body_alphabet.end(), *delimiter) != body_alphabet.end()) {
            throw InvalidParams("delimiter must not be a digit or body symbol");
        }
    }
}

Grammar gen_len(const LenParams& p)
{
    p.check();
    const std::size_t n = p.width;
    auto x = [](std::size_t i) { return "X" + std::to_string(i); };
    auto f = [](std::size_t j) { return "F" + std::to_string(j); };

    Grammar g("S");
    for (std::size_t i = 0; i <= n; ++i) {
        g.declare_variable(x(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
        g.declare_variable(f(j));
    }

    g.add_rule("S", {Symbol::var(x(0))});
    if (p.delimiter) {
        g.add_rule(x(n), {Symbol::term(*p.delimiter)});
    } else {
        g.add_rule(x(n), {});
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t weight = p.order == DigitOrder::lsd_first ? i : n - 1 - i;
        for (unsigned d = 0; d < p.base; ++d) {
            std::vector<Symbol> rhs{Symbol::term(digit_symbol(d)), Symbol::var(x(i + 1))};
            append(rhs, repeat(f(weight), d));
            g.add_rule(x(i), std::move(rhs));
        }
    }
    for (std::size_t j = 1; j < n; ++j) {
        g.add_rule(f(j), repeat(f(j - 1), p.base));
    }
    for (Terminal c : p.body_alphabet) {
        g.add_rule(f(0), {Symbol::term(c)});
    }
    return g;
}

Grammar gen_chunk(const LenParams& p)
{
    if (!p.delimiter) {
        throw InvalidParams("chunked framing needs a delimiter symbol");
    }
    p.check();
    LenParams inner = p;
    inner.delimiter.reset();
    Grammar g = gen_len(inner);
    g.declare_terminal(*p.delimiter);
    g.add_rule("Z", {Symbol::var("S"), Symbol::term(*p.delimiter), Symbol::var("Z")});
    g.add_rule("Z", {Symbol::var("S"), Symbol::term(*p.delimiter)});
    g.set_start("Z");
    return g;
}

Grammar gen_eq_component(std::size_t n, std::size_t i, std::span<const Terminal> alphabet)
{
    check_position(n, i, "equality component");
    check_alphabet(alphabet, "equality component");
    Grammar g("S");
    g.declare_variable("T");
    for (Terminal c : alphabet) {
        std::vector<Symbol> rhs = repeat("T", i - 1);
        rhs.push_back(Symbol::term(c));
        append(rhs, repeat("T", n - 1));
        rhs.push_back(Symbol::term(c));
        append(rhs, repeat("T", n - i));
        g.add_rule("S", std::move(rhs));
    }
    for (Terminal c : alphabet) {
        g.add_rule("T", {Symbol::term(c)});
    }
    return g;
}

IdiomValidator eq_validator(std::size_t n, std::span<const Terminal> alphabet)
{
    if (n == 0) {
        throw InvalidParams("equality width must be positive");
    }
    IdiomValidator v;
    std::vector<Expr> conj;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string id = "eq" + std::to_string(i);
        v.atoms.push_back({id, gen_eq_component(n, i, alphabet)});
        conj.push_back(Expr::atom(id));
    }
    v.expr = Expr::all(std::move(conj));
    return v;
}

OrderSpec::OrderSpec(std::vector<Terminal> ascending) : ascending_(std::move(ascending))
{
    check_alphabet(ascending_, "order");
}

bool OrderSpec::contains(Terminal t) const
{
    return std::find(ascending_.begin(), ascending_.end(), t) != ascending_.end();
}

std::size_t OrderSpec::rank(Terminal t) const
{
    auto it = std::find(ascending_.begin(), ascending_.end(), t);
    if (it == ascending_.end()) {
        throw InvalidParams("symbol " + terminal_to_text(t) + " is not in the order");
    }
    return static_cast<std::size_t>(it - ascending_.begin());
}

OrderSpec digit_order(unsigned base)
{
    std::vector<Terminal> digits;
    for (unsigned d = 0; d < base; ++d) {
        digits.push_back(digit_symbol(d));
    }
    return OrderSpec(std::move(digits));
}

Grammar gen_leq_component(std::size_t n, std::size_t i, const OrderSpec& ord)
{
    check_position(n, i, "order component");
    const auto& sigma = ord.symbols();
    auto t_at_least = [](std::size_t rank) { return "T_" + std::to_string(rank); };

    Grammar g("S");
    g.declare_variable("T");
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        g.declare_variable(t_at_least(a));
    }
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        std::vector<Symbol> rhs = repeat("T", i - 1);
        rhs.push_back(Symbol::term(sigma[a]));
        append(rhs, repeat("T", n - 1));
        rhs.push_back(Symbol::var(t_at_least(a)));
        append(rhs, repeat("T", n - i));
        g.add_rule("S", std::move(rhs));
    }
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        for (std::size_t c = a; c < sigma.size(); ++c) {
            g.add_rule(t_at_least(a), {Symbol::term(sigma[c])});
        }
    }
    for (Terminal c : sigma) {
        g.add_rule("T", {Symbol::term(c)});
    }
    return g;
}

IdiomValidator leq_validator(std::size_t n, const OrderSpec& ord)
{
    if (n == 0) {
        throw InvalidParams("comparison width must be positive");
    }
    IdiomValidator v;
    auto eq = [](std::size_t i) { return "eq" + std::to_string(i); };
    auto leq = [](std::size_t i) { return "leq" + std::to_string(i); };
    for (std::size_t i = 1; i <= n; ++i) {
        v.atoms.push_back({eq(i), gen_eq_component(n, i, ord.symbols())});
    }
    for (std::size_t i = 1; i <= n; ++i) {
        v.atoms.push_back({leq(i), gen_leq_component(n, i, ord)});
    }

    std::vector<Expr> disjuncts;
    std::vector<Expr> all_equal;
    for (std::size_t i = 1; i <= n; ++i) {
        all_equal.push_back(Expr::atom(eq(i)));
    }
    disjuncts.push_back(Expr::all(std::move(all_equal)));
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Expr> conj;
        for (std::size_t j = 1; j < i; ++j) {
            conj.push_back(Expr::atom(eq(j)));
        }
        conj.push_back(Expr::negate(Expr::atom(eq(i))));
        conj.push_back(Expr::atom(leq(i)));
        disjuncts.push_back(Expr::all(std::move(conj)));
    }
    v.expr = Expr::any(std::move(disjuncts));
    return v;
}

std::pair<Word, Word> pad_for_compare(WordView x, WordView y, const OrderSpec& ord)
{
    for (Terminal t : x) {
        (void)ord.rank(t);
    }
    for (Terminal t : y) {
        (void)ord.rank(t);
    }
    const std::size_t len = std::max(x.size(), y.size());
    Word px(len - x.size(), ord.min());
    px.insert(px.end(), x.begin(), x.end());
    Word py(len - y.size(), ord.min());
    py.insert(py.end(), y.begin(), y.end());
    return {std::move(px), std::move(py)};
}

Grammar finite_language_grammar(const std::vector<Word>& words)
{
    Grammar g("W");
    for (const auto& w : words) {
        std::vector<Symbol> rhs;
        for (Terminal t : w) {
            rhs.push_back(Symbol::term(t));
        }
        g.add_rule("W", std::move(rhs));
    }
    return g;
}

Grammar gen_general_eq_component(const GeneralEqParams& p, std::size_t i)
{
    check_position(p.width, i, "general equality component");
    check_alphabet(p.alphabet, "general equality component");
    for (const Grammar* filler : {&p.first_filler, &p.middle_filler, &p.last_filler}) {
        auto diags = grammar_validate(*filler);
        if (!diags.empty()) {
            throw InvalidParams("invalid filler grammar: " + diags.front().message);
        }
    }

    const std::size_t n = p.width;
    Grammar g("S");
    g.declare_variable("T");
    const std::string first = g.embed(p.first_filler, "fm.");
    const std::string middle = g.embed(p.middle_filler, "mm.");
    const std::string last = g.embed(p.last_filler, "lm.");

    for (std::size_t c = 0; c < p.alphabet.size(); ++c) {
        const std::string block = "P_" + std::to_string(c);
        const std::string rest = "Q_" + std::to_string(c);
        g.declare_variable(block);
        g.declare_variable(rest);

        g.add_rule("S", {Symbol::var(block), Symbol::var(first), Symbol::var(rest), Symbol::var(block),
                            Symbol::var(last)});
        g.add_rule("S", {Symbol::var(block), Symbol::var(first), Symbol::var(block), Symbol::var(last)});
        g.add_rule(rest, {Symbol::var(block), Symbol::var(middle), Symbol::var(rest)});
        g.add_rule(rest, {Symbol::var(block), Symbol::var(middle)});

        std::vector<Symbol> rhs = repeat("T", i - 1);
        rhs.push_back(Symbol::term(p.alphabet[c]));
        append(rhs, repeat("T", n - i));
        g.add_rule(block, std::move(rhs));
    }
    for (Terminal c : p.alphabet) {
        g.add_rule("T", {Symbol::term(c)});
    }
    return g;
}

IdiomValidator general_eq_validator(const GeneralEqParams& p)
{
    if (p.width == 0) {
        throw InvalidParams("block width must be positive");
    }
    IdiomValidator v;
    std::vector<Expr> conj;
    for (std::size_t i = 1; i <= p.width; ++i) {
        std::string id = "geq" + std::to_string(i);
        v.atoms.push_back({id, gen_general_eq_component(p, i)});
        conj.push_back(Expr::atom(id));
    }
    v.expr = Expr::all(std::move(conj));
    return v;
}

IdiomValidator date_compare_validator(DateFormat format)
{
    switch (format) {
    case DateFormat::http_date:
        return leq_validator(date_canonical_width, digit_order(10));
    }
    throw InvalidParams("unknown date format");
}

}  // namespace idiomval
