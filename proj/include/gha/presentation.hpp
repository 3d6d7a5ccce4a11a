#pragma once

// Plain-text inputs for the cli: algebra presentation files and
// module-spec expressions, plus the builders that turn both into live
// objects over a chosen field.

#include "gha/module.hpp"

#include <optional>

namespace gha {

/* Input rejections carrying "file:line: what" messages; the cli maps
   them to the usage exit code, apart from contract errors. */
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/* A parsed presentation file. Builtins over their own quiver
   (polynomial, exterior, preprojective) expand to an explicit
   presentation at parse time. The trivial extension and tensor builtins
   stay structured and lower to the dedicated constructors at build
   time: pushing them through the generic relation-ideal enumeration
   would square the basis work for no gain. */
struct ParsedInput {
    enum Kind { presentation, trivext, tensor_pair };
    Kind kind = presentation;
    QuiverPresentation pres;          // kind == presentation
    Quiver quiver;                    // kind == trivext
    std::vector<ParsedInput> factors; // kind == tensor_pair, exactly two
    std::optional<long> field_p;      // field section: 0 = rationals, else the prime
};

/* Grammar, line oriented, # starts a comment:
     field rationals | field <prime>
     vertices <count>
     arrows            (header; then one "name: src -> tgt" per line)
     relations         (header; then one linear combination per line,
                        paths dot-separated, coefficients int or int/int)
     builtin polynomial(n) | exterior(n) |
             preprojective(<count>; <arrows>) | trivext(<count>; <arrows>) |
             tensor(<file>, <file>)
   A file carries exactly one of {arrows+relations, builtin}. */
ParsedInput parse_presentation_text(const std::string& text, const std::string& origin);
ParsedInput parse_presentation_file(const std::string& path);

// inverse of the explicit branch of the parser, used to write fixtures
std::string emit_presentation(const QuiverPresentation& p);

// same linear combination and path grammar as a relation line
Relation parse_relation_line(const QuiverPresentation& p, const std::string& text);

/* Module-spec expressions:
     simple(i) | proj(i) | trunc(k) | shift(M,n) | sum(M,...) */
struct ModuleSpec {
    enum Kind { simple, proj, trunc, shifted, summed };
    Kind kind = simple;
    int arg = 0; // vertex, truncation bound or shift
    std::vector<ModuleSpec> parts;
};
ModuleSpec parse_module_spec(const std::string& text);

template <class F>
AlgPtr<F> build_input(const ParsedInput& in, const F& field, int dmax) {
    switch (in.kind) {
    case ParsedInput::trivext:
        return trivial_extension_algebra(in.quiver, field, dmax);
    case ParsedInput::tensor_pair:
        return tensor_algebra(build_input(in.factors[0], field, dmax),
                              build_input(in.factors[1], field, dmax));
    default:
        return build_algebra(in.pres, field, dmax);
    }
}

template <class F>
GradedModule<F> build_module_spec(const ModuleSpec& s, const AlgPtr<F>& a) {
    switch (s.kind) {
    case ModuleSpec::simple:
        return simple_module(a, s.arg);
    case ModuleSpec::proj:
        return projective_module(a, s.arg);
    case ModuleSpec::trunc:
        return algebra_mod_truncation(a, s.arg);
    case ModuleSpec::shifted:
        return shift_module(build_module_spec(s.parts[0], a), s.arg);
    default: {
        std::vector<GradedModule<F>> parts;
        parts.reserve(s.parts.size());
        for (const auto& p : s.parts) parts.push_back(build_module_spec(p, a));
        return direct_sum(parts);
    }
    }
}

} // namespace gha
