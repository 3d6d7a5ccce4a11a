#include "gha/presentation.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace gha {
namespace {

struct Tok {
    enum Kind {
        num,
        ident,
        plus,
        minus,
        dot,
        slash,
        star,
        colon,
        arrow_to,
        lparen,
        rparen,
        semi,
        comma,
        end
    };
    Kind kind = end;
    std::string text;
    long value = 0;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw parse_error(where + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

/* Identifiers start with a letter or underscore and may continue with
   the characters the builtin constructors use in arrow names (* ' @).
   A '-' directly before '>' is the arrow token, otherwise a sign. */
std::vector<Tok> lex(const std::string& line, const std::string& where) {
    std::vector<Tok> out;
    auto is_start = [](char c) { return std::isalpha((unsigned char)c) || c == '_'; };
    auto is_cont = [](char c) {
        return std::isalnum((unsigned char)c) || c == '_' || c == '*' || c == '\'' || c == '@';
    };
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        if (c == '#') break;
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit((unsigned char)line[j])) ++j;
            Tok t;
            t.kind = Tok::num;
            t.text = line.substr(i, j - i);
            try {
                t.value = std::stol(t.text);
            } catch (const std::exception&) {
                fail(where, "number out of range: " + t.text);
            }
            out.push_back(std::move(t));
            i = j;
            continue;
        }
        if (is_start(c)) {
            std::size_t j = i + 1;
            while (j < line.size() && is_cont(line[j])) ++j;
            out.push_back({Tok::ident, line.substr(i, j - i), 0});
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Tok::arrow_to, "->", 0});
            i += 2;
            continue;
        }
        Tok t;
        t.text = std::string(1, c);
        switch (c) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '.': t.kind = Tok::dot; break;
        case '/': t.kind = Tok::slash; break;
        case '*': t.kind = Tok::star; break;
        case ':': t.kind = Tok::colon; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case ';': t.kind = Tok::semi; break;
        case ',': t.kind = Tok::comma; break;
        default: fail(where, "unexpected character '" + t.text + "'");
        }
        out.push_back(std::move(t));
        ++i;
    }
    out.push_back({Tok::end, "", 0});
    return out;
}

struct Cur {
    const std::vector<Tok>* toks;
    std::size_t i = 0;
    std::string where;

    const Tok& peek() const { return (*toks)[i]; }
    Tok take() { return (*toks)[i++]; }
    bool at(Tok::Kind k) const { return (*toks)[i].kind == k; }
    std::string shown() const {
        return at(Tok::end) ? "end of line" : "'" + peek().text + "'";
    }
    Tok expect(Tok::Kind k, const std::string& what) {
        if (!at(k)) fail(where, "expected " + what + " but found " + shown());
        return take();
    }
    void done() {
        if (!at(Tok::end)) fail(where, "trailing input: " + shown());
    }
};

PathTerm parse_term(Cur& c, long sign, const std::map<std::string, int>& arrow_ix,
                    const std::vector<Arrow>& arrows) {
    PathTerm t;
    t.num = sign;
    t.den = 1;
    if (c.at(Tok::num)) {
        t.num = sign * c.take().value;
        if (c.at(Tok::slash)) {
            c.take();
            t.den = c.expect(Tok::num, "a denominator").value;
            if (t.den == 0) fail(c.where, "zero denominator");
        }
        if (c.at(Tok::star)) c.take();
    }
    for (;;) {
        auto name = c.expect(Tok::ident, "an arrow name").text;
        auto it = arrow_ix.find(name);
        if (it == arrow_ix.end()) fail(c.where, "unknown arrow '" + name + "'");
        t.arrows.push_back(it->second);
        if (!c.at(Tok::dot)) break;
        c.take();
    }
    for (std::size_t k = 0; k + 1 < t.arrows.size(); ++k) {
        const Arrow& x = arrows[(std::size_t)t.arrows[k]];
        const Arrow& y = arrows[(std::size_t)t.arrows[k + 1]];
        if (x.tgt != y.src)
            fail(c.where, "path is not composable: '" + y.name + "' starts at vertex " +
                              std::to_string(y.src) + " but '" + x.name +
                              "' ends at vertex " + std::to_string(x.tgt));
    }
    return t;
}

Relation parse_comb(Cur& c, const std::map<std::string, int>& arrow_ix,
                    const std::vector<Arrow>& arrows) {
    Relation rel;
    long sign = 1;
    if (c.at(Tok::minus)) {
        c.take();
        sign = -1;
    } else if (c.at(Tok::plus)) {
        c.take();
    }
    rel.terms.push_back(parse_term(c, sign, arrow_ix, arrows));
    while (!c.at(Tok::end)) {
        if (c.at(Tok::plus)) {
            c.take();
            sign = 1;
        } else if (c.at(Tok::minus)) {
            c.take();
            sign = -1;
        } else {
            fail(c.where, "expected '+' or '-' between terms, found " + c.shown());
        }
        rel.terms.push_back(parse_term(c, sign, arrow_ix, arrows));
    }
    auto [s0, t0] = path_endpoints(arrows, rel.terms[0].arrows);
    for (auto& t : rel.terms) {
        auto [s, g] = path_endpoints(arrows, t.arrows);
        if (s != s0 || g != t0) fail(c.where, "relation mixes paths with different endpoints");
        if (t.arrows.size() != rel.terms[0].arrows.size())
            fail(c.where, "relation mixes paths of different lengths");
    }
    if (rel.terms[0].arrows.size() < 2)
        fail(c.where, "relation paths must have length at least 2");
    return rel;
}

Arrow parse_arrow_decl(Cur& c) {
    Arrow a;
    a.name = c.expect(Tok::ident, "an arrow name").text;
    c.expect(Tok::colon, "':' after the arrow name");
    a.src = (int)c.expect(Tok::num, "a source vertex").value;
    c.expect(Tok::arrow_to, "'->'");
    a.tgt = (int)c.expect(Tok::num, "a target vertex").value;
    c.done();
    return a;
}

Quiver parse_inline_quiver(Cur& c) {
    Quiver q;
    q.vertex_count = (int)c.expect(Tok::num, "a vertex count").value;
    c.expect(Tok::semi, "';' after the vertex count");
    for (;;) {
        Arrow a;
        a.name = c.expect(Tok::ident, "an arrow name").text;
        c.expect(Tok::colon, "':' after the arrow name");
        a.src = (int)c.expect(Tok::num, "a source vertex").value;
        c.expect(Tok::arrow_to, "'->'");
        a.tgt = (int)c.expect(Tok::num, "a target vertex").value;
        q.arrows.push_back(std::move(a));
        if (!c.at(Tok::comma)) break;
        c.take();
    }
    try {
        validate_quiver(q.vertex_count, q.arrows);
    } catch (const contract_error& e) {
        fail(c.where, e.what());
    }
    return q;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos + 1);
}

ParsedInput parse_text_impl(const std::string& text, const std::string& origin, int depth);

ParsedInput parse_file_impl(const std::string& path, int depth) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text_impl(buf.str(), path, depth);
}

ParsedInput parse_builtin(const std::string& spec, const std::string& where,
                          const std::string& origin, int depth) {
    auto lp = spec.find('(');
    if (lp == std::string::npos || spec.empty() || spec.back() != ')')
        fail(where, "builtin must look like name(args)");
    auto name = trim(spec.substr(0, lp));
    auto args = spec.substr(lp + 1, spec.size() - lp - 2);
    ParsedInput out;
    if (name == "polynomial" || name == "exterior") {
        auto toks = lex(args, where);
        Cur c{&toks, 0, where};
        long n = c.expect(Tok::num, "a variable count").value;
        c.done();
        if (n < 1) fail(where, name + " needs at least one variable");
        out.pres = name == "polynomial" ? polynomial_presentation((int)n)
                                        : exterior_presentation((int)n);
    } else if (name == "preprojective") {
        auto toks = lex(args, where);
        Cur c{&toks, 0, where};
        auto q = parse_inline_quiver(c);
        c.done();
        try {
            out.pres = preprojective_presentation(q);
        } catch (const contract_error& e) {
            fail(where, e.what());
        }
    } else if (name == "trivext") {
        auto toks = lex(args, where);
        Cur c{&toks, 0, where};
        out.kind = ParsedInput::trivext;
        out.quiver = parse_inline_quiver(c);
        c.done();
    } else if (name == "tensor") {
        auto comma = args.find(',');
        if (comma == std::string::npos || args.find(',', comma + 1) != std::string::npos)
            fail(where, "tensor takes exactly two presentation files");
        out.kind = ParsedInput::tensor_pair;
        for (auto part : {trim(args.substr(0, comma)), trim(args.substr(comma + 1))}) {
            if (part.empty()) fail(where, "tensor with an empty file argument");
            if (part.front() != '/') part = dir_of(origin) + part;
            out.factors.push_back(parse_file_impl(part, depth + 1));
        }
        for (auto& f : out.factors)
            if (f.field_p) {
                if (out.field_p && *out.field_p != *f.field_p)
                    fail(where, "tensor factors disagree about the field");
                out.field_p = f.field_p;
            }
    } else {
        fail(where, "unknown builtin '" + name + "'");
    }
    return out;
}

ParsedInput parse_text_impl(const std::string& text, const std::string& origin, int depth) {
    if (depth > 16) throw parse_error(origin + ": tensor nesting too deep (cycle?)");
    static const std::set<std::string> keywords = {"field", "vertices", "arrows", "relations",
                                                  "builtin"};
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int section = 0; // 0 none, 1 arrows, 2 relations
    bool have_vertices = false;
    std::optional<long> field_p;
    std::optional<std::string> builtin_spec;
    std::string builtin_where;
    QuiverPresentation pres;
    std::vector<std::string> arrow_where;
    std::vector<std::pair<std::string, std::string>> relation_lines; // (where, text)

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        std::string where = origin + ":" + std::to_string(lineno);

        std::size_t wend = 0;
        while (wend < line.size() && !std::isspace((unsigned char)line[wend]) &&
               line[wend] != '(' && line[wend] != ':')
            ++wend;
        std::string word = line.substr(0, wend);
        std::string rest = trim(line.substr(wend));

        if (word == "field") {
            if (field_p) fail(where, "duplicate field section");
            auto toks = lex(rest, where);
            Cur c{&toks, 0, where};
            if (c.at(Tok::ident) && c.peek().text == "rationals") {
                c.take();
                field_p = 0;
            } else {
                long p = c.expect(Tok::num, "'rationals' or a prime").value;
                if (!is_prime(p)) fail(where, "field characteristic must be prime");
                field_p = p;
            }
            c.done();
        } else if (word == "vertices") {
            if (have_vertices) fail(where, "duplicate vertices section");
            auto toks = lex(rest, where);
            Cur c{&toks, 0, where};
            pres.vertex_count = (int)c.expect(Tok::num, "a vertex count").value;
            c.done();
            if (pres.vertex_count < 1) fail(where, "a quiver needs at least one vertex");
            have_vertices = true;
        } else if (word == "arrows" && rest.empty()) {
            section = 1;
        } else if (word == "relations" && rest.empty()) {
            section = 2;
        } else if (word == "builtin") {
            if (builtin_spec) fail(where, "duplicate builtin section");
            builtin_spec = rest;
            builtin_where = where;
        } else if (section == 1) {
            auto toks = lex(line, where);
            Cur c{&toks, 0, where};
            auto a = parse_arrow_decl(c);
            if (keywords.count(a.name)) fail(where, "'" + a.name + "' is a reserved word");
            pres.arrows.push_back(std::move(a));
            arrow_where.push_back(where);
        } else if (section == 2) {
            relation_lines.push_back({where, line});
        } else {
            fail(where,
                 "line belongs to no section (expected field, vertices, arrows, "
                 "relations or builtin)");
        }
    }

    bool explicit_part = have_vertices || !pres.arrows.empty() || !relation_lines.empty();
    if (builtin_spec && explicit_part)
        fail(builtin_where, "a file carries exactly one of builtin or arrows+relations");
    if (builtin_spec) {
        auto out = parse_builtin(*builtin_spec, builtin_where, origin, depth);
        if (field_p) {
            if (out.field_p && *out.field_p != *field_p)
                fail(builtin_where, "field section disagrees with the tensor factors");
            out.field_p = field_p;
        }
        return out;
    }
    if (!explicit_part) throw parse_error(origin + ": empty presentation");
    if (!have_vertices) throw parse_error(origin + ": missing vertices section");

    std::map<std::string, int> arrow_ix;
    for (std::size_t i = 0; i < pres.arrows.size(); ++i) {
        const Arrow& a = pres.arrows[i];
        if (!arrow_ix.emplace(a.name, (int)i).second)
            fail(arrow_where[i], "duplicate arrow name '" + a.name + "'");
        if (a.src < 0 || a.src >= pres.vertex_count || a.tgt < 0 ||
            a.tgt >= pres.vertex_count)
            fail(arrow_where[i], "arrow '" + a.name + "' touches a vertex out of range");
    }
    for (auto& [where, text_line] : relation_lines) {
        auto toks = lex(text_line, where);
        Cur c{&toks, 0, where};
        pres.relations.push_back(parse_comb(c, arrow_ix, pres.arrows));
    }
    validate_presentation(pres);

    ParsedInput out;
    out.pres = std::move(pres);
    out.field_p = field_p;
    return out;
}

std::string coef_str(long num, long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long n = num < 0 ? -num : num;
    if (n == 1 && den == 1) return "";
    if (den == 1) return std::to_string(n) + " ";
    return std::to_string(n) + "/" + std::to_string(den) + " ";
}

} // namespace

ParsedInput parse_presentation_text(const std::string& text, const std::string& origin) {
    return parse_text_impl(text, origin, 0);
}

ParsedInput parse_presentation_file(const std::string& path) {
    return parse_file_impl(path, 0);
}

std::string emit_presentation(const QuiverPresentation& p) {
    std::ostringstream out;
    out << "vertices " << p.vertex_count << "\n";
    out << "arrows\n";
    for (const auto& a : p.arrows)
        out << "  " << a.name << ": " << a.src << " -> " << a.tgt << "\n";
    if (p.relations.empty()) return out.str();
    out << "relations\n";
    for (const auto& rel : p.relations) {
        out << "  ";
        for (std::size_t t = 0; t < rel.terms.size(); ++t) {
            const auto& term = rel.terms[t];
            bool neg = (term.num < 0) != (term.den < 0);
            if (t == 0) {
                if (neg) out << "- ";
            } else {
                out << (neg ? " - " : " + ");
            }
            out << coef_str(term.num, term.den);
            for (std::size_t k = 0; k < term.arrows.size(); ++k) {
                if (k) out << ".";
                out << p.arrows[(std::size_t)term.arrows[k]].name;
            }
        }
        out << "\n";
    }
    return out.str();
}

Relation parse_relation_line(const QuiverPresentation& p, const std::string& text) {
    std::map<std::string, int> arrow_ix;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) arrow_ix.emplace(p.arrows[i].name, (int)i);
    auto toks = lex(text, "relation");
    Cur c{&toks, 0, "relation"};
    return parse_comb(c, arrow_ix, p.arrows);
}

namespace {

ModuleSpec parse_mspec(Cur& c) {
    auto name = c.expect(Tok::ident, "a module constructor").text;
    c.expect(Tok::lparen, "'(' after '" + name + "'");
    ModuleSpec s;
    if (name == "simple" || name == "proj" || name == "trunc") {
        s.kind = name == "simple" ? ModuleSpec::simple
                 : name == "proj" ? ModuleSpec::proj
                                  : ModuleSpec::trunc;
        s.arg = (int)c.expect(Tok::num, "an integer argument").value;
    } else if (name == "shift") {
        s.kind = ModuleSpec::shifted;
        s.parts.push_back(parse_mspec(c));
        c.expect(Tok::comma, "',' before the shift amount");
        long sign = 1;
        if (c.at(Tok::minus)) {
            c.take();
            sign = -1;
        }
        s.arg = (int)(sign * c.expect(Tok::num, "a shift amount").value);
    } else if (name == "sum") {
        s.kind = ModuleSpec::summed;
        s.parts.push_back(parse_mspec(c));
        while (c.at(Tok::comma)) {
            c.take();
            s.parts.push_back(parse_mspec(c));
        }
    } else {
        fail(c.where, "unknown module constructor '" + name + "'");
    }
    c.expect(Tok::rparen, "')'");
    return s;
}

} // namespace

ModuleSpec parse_module_spec(const std::string& text) {
    auto toks = lex(text, "module-spec");
    Cur c{&toks, 0, "module-spec"};
    auto s = parse_mspec(c);
    c.done();
    return s;
}

} // namespace gha
