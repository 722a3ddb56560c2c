#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "plancheck/model.hpp"

// Reading and writing the PDDL subset: domains, problems, plan files.
//
// The grammar is deliberately small: :strips and :typing requirements,
// typed parameter/object lists, and goal formulas built from atoms, (not
// <atom>) and (and ...). Anything beyond that — quantifiers, disjunction,
// equality, functions, type hierarchies — is reported as an
// unsupported-feature error rather than half-parsed.
//
// Parsing is total: any byte sequence yields either a value or a ParseError,
// never a crash. Printing round-trips: parse(print(v)) == v for well-formed
// values within this grammar.

namespace plancheck {

struct SourcePos {
  int line = 1;    // 1-based
  int column = 1;  // 1-based

  friend bool operator==(const SourcePos &, const SourcePos &) = default;
};

enum class ParseErrorKind {
  lex,
  syntax,
  unknown_name,
  arity_mismatch,
  type_mismatch,
  unsupported_feature,
};

[[nodiscard]] inline const char *to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::lex: return "lex";
    case ParseErrorKind::syntax: return "syntax";
    case ParseErrorKind::unknown_name: return "unknown-name";
    case ParseErrorKind::arity_mismatch: return "arity-mismatch";
    case ParseErrorKind::type_mismatch: return "type-mismatch";
    case ParseErrorKind::unsupported_feature: return "unsupported-feature";
  }
  return "?";
}

struct ParseError {
  SourcePos pos;
  ParseErrorKind kind = ParseErrorKind::syntax;
  std::string message;
};

template <class T>
using Parsed = std::variant<T, ParseError>;

[[nodiscard]] Parsed<Domain> parse_domain(std::string_view text);
[[nodiscard]] Parsed<Problem> parse_problem(std::string_view text,
                                            const Domain &d);
[[nodiscard]] Parsed<Plan> parse_plan(std::string_view text, const Domain &d,
                                      const Problem &p);

[[nodiscard]] std::string print_domain(const Domain &d);
[[nodiscard]] std::string print_problem(const Problem &p);
[[nodiscard]] std::string print_plan(const Plan &pl);

// --- lexing ---------------------------------------------------------------

namespace detail {

[[nodiscard]] inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

[[nodiscard]] inline bool ci_eq(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

[[nodiscard]] inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

[[nodiscard]] inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

[[nodiscard]] inline bool is_valid_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s.substr(1))
    if (!ident_char(c)) return false;
  return true;
}

// Formula heads and structural words that cannot double as declared names.
[[nodiscard]] inline bool reserved_word(std::string_view s) {
  for (const char *w : {"define", "domain", "problem", "and", "not", "or",
                        "when", "forall", "exists", "imply", "either"})
    if (ci_eq(s, w)) return true;
  return false;
}

struct Token {
  enum class Kind { lparen, rparen, dash, symbol, variable, keyword };
  Kind kind = Kind::symbol;
  std::string text;  // variable/keyword text excludes the ?/: sigil
  SourcePos pos;
};

// Tokenizes the whole input. `line0` offsets line numbers so plan files can
// lex line by line with true positions.
[[nodiscard]] inline Parsed<std::vector<Token>> lex(std::string_view text,
                                                    int line0 = 1) {
  std::vector<Token> out;
  SourcePos pos{line0, 1};
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(c);
      ++i;
      continue;
    }
    if (c == ';') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') {
        advance(text[i]);
        ++i;
      }
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Token::Kind::lparen : Token::Kind::rparen,
                     std::string(1, c), pos});
      advance(c);
      ++i;
      continue;
    }
    const SourcePos start = pos;
    if (c == '?' || c == ':' || c == '-' || ident_start(c)) {
      std::string word(1, c);
      advance(c);
      ++i;
      while (i < text.size() && ident_char(text[i])) {
        word.push_back(text[i]);
        advance(text[i]);
        ++i;
      }
      if (word == "-") {
        out.push_back({Token::Kind::dash, word, start});
      } else if (word[0] == '?') {
        if (!is_valid_identifier(std::string_view(word).substr(1)))
          return ParseError{start, ParseErrorKind::lex,
                            "malformed variable " + word};
        out.push_back({Token::Kind::variable, word.substr(1), start});
      } else if (word[0] == ':') {
        if (!is_valid_identifier(std::string_view(word).substr(1)))
          return ParseError{start, ParseErrorKind::lex,
                            "malformed keyword " + word};
        out.push_back({Token::Kind::keyword, lower(word.substr(1)), start});
      } else if (word[0] == '-') {
        return ParseError{start, ParseErrorKind::lex,
                          "identifier may not start with '-': " + word};
      } else {
        if (!is_valid_identifier(word))
          return ParseError{start, ParseErrorKind::lex,
                            "malformed identifier " + word};
        out.push_back({Token::Kind::symbol, word, start});
      }
      continue;
    }
    std::ostringstream msg;
    msg << "unexpected character ";
    if (std::isprint(static_cast<unsigned char>(c)))
      msg << '\'' << c << '\'';
    else
      msg << "0x" << std::hex << int(static_cast<unsigned char>(c));
    return ParseError{pos, ParseErrorKind::lex, msg.str()};
  }
  return out;
}

// --- s-expressions ----------------------------------------------------------

struct Sexp {
  enum class Kind { list, symbol, variable, keyword, dash };
  Kind kind = Kind::list;
  std::string text;
  SourcePos pos;
  std::vector<Sexp> items;  // when kind == list
};

constexpr int kMaxNesting = 200;

struct Reader {
  const std::vector<Token> &toks;
  std::size_t at = 0;

  [[nodiscard]] SourcePos here() const {
    if (at < toks.size()) return toks[at].pos;
    return toks.empty() ? SourcePos{} : toks.back().pos;
  }

  [[nodiscard]] Parsed<Sexp> read(int depth = 0) {
    if (at >= toks.size())
      return ParseError{here(), ParseErrorKind::syntax, "unexpected end of input"};
    const Token &t = toks[at];
    ++at;
    switch (t.kind) {
      case Token::Kind::symbol:
        return Sexp{Sexp::Kind::symbol, t.text, t.pos, {}};
      case Token::Kind::variable:
        return Sexp{Sexp::Kind::variable, t.text, t.pos, {}};
      case Token::Kind::keyword:
        return Sexp{Sexp::Kind::keyword, t.text, t.pos, {}};
      case Token::Kind::dash:
        return Sexp{Sexp::Kind::dash, t.text, t.pos, {}};
      case Token::Kind::rparen:
        return ParseError{t.pos, ParseErrorKind::syntax, "unexpected ')'"};
      case Token::Kind::lparen: {
        if (depth >= kMaxNesting)
          return ParseError{t.pos, ParseErrorKind::syntax,
                            "expression nested too deeply"};
        Sexp list{Sexp::Kind::list, "", t.pos, {}};
        while (true) {
          if (at >= toks.size())
            return ParseError{t.pos, ParseErrorKind::syntax,
                              "unterminated '(' here"};
          if (toks[at].kind == Token::Kind::rparen) {
            ++at;
            return list;
          }
          auto item = read(depth + 1);
          if (auto *err = std::get_if<ParseError>(&item)) return *err;
          list.items.push_back(std::move(std::get<Sexp>(item)));
        }
      }
    }
    return ParseError{t.pos, ParseErrorKind::syntax, "unreadable token"};
  }
};

[[nodiscard]] inline Parsed<Sexp> read_single(std::string_view text) {
  auto toks = lex(text);
  if (auto *err = std::get_if<ParseError>(&toks)) return *err;
  Reader r{std::get<std::vector<Token>>(toks)};
  auto sexp = r.read();
  if (auto *err = std::get_if<ParseError>(&sexp)) return *err;
  if (r.at != r.toks.size())
    return ParseError{r.toks[r.at].pos, ParseErrorKind::syntax,
                      "trailing input after expression"};
  return sexp;
}

[[nodiscard]] inline bool is_symbol(const Sexp &s, std::string_view word) {
  return s.kind == Sexp::Kind::symbol && ci_eq(s.text, word);
}

// Reads `name1 name2 - type name3 - type2 ...`; every name must be typed.
// `what` labels error messages ("object", "parameter", ...).
template <class MakeEntry>
[[nodiscard]] inline std::optional<ParseError> read_typed_list(
    const std::vector<Sexp> &items, std::size_t begin, const char *what,
    Sexp::Kind name_kind, MakeEntry &&make_entry) {
  std::vector<const Sexp *> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const Sexp &s = items[i];
    if (s.kind == Sexp::Kind::dash) {
      if (pending.empty())
        return ParseError{s.pos, ParseErrorKind::syntax,
                          std::string("no ") + what + " names before '-'"};
      if (i + 1 >= items.size() || items[i + 1].kind != Sexp::Kind::symbol)
        return ParseError{s.pos, ParseErrorKind::syntax,
                          "expected a type name after '-'"};
      const Sexp &type = items[i + 1];
      for (const Sexp *name : pending)
        if (auto err = make_entry(*name, type)) return err;
      pending.clear();
      ++i;
      continue;
    }
    if (s.kind != name_kind)
      return ParseError{s.pos, ParseErrorKind::syntax,
                        std::string("expected a ") + what + " name"};
    pending.push_back(&s);
  }
  if (!pending.empty())
    return ParseError{pending.back()->pos, ParseErrorKind::syntax,
                      std::string(what) + " list is missing its '- <type>'"};
  return std::nullopt;
}

// Splits a precondition/effect/goal formula into polarity-tagged atom forms:
// a bare atom, (not <atom>), or (and ...) of those, nested ands flattened.
[[nodiscard]] inline Parsed<std::vector<std::pair<Polarity, const Sexp *>>>
collect_literals(const Sexp &form) {
  std::vector<std::pair<Polarity, const Sexp *>> out;

  auto unsupported = [](const Sexp &s, const std::string &head) {
    return ParseError{s.pos, ParseErrorKind::unsupported_feature,
                      "'" + head + "' is outside the supported subset"};
  };

  // Non-recursive walk over nested (and ...) forms; the index-based stack
  // yields literals in source order.
  struct Frame {
    const Sexp *list;
    std::size_t next;
  };
  std::vector<Frame> stack;

  auto handle = [&](const Sexp &s) -> std::optional<ParseError> {
    if (s.kind != Sexp::Kind::list || s.items.empty())
      return ParseError{s.pos, ParseErrorKind::syntax,
                        "expected an atom, (not <atom>), or (and ...)"};
    const Sexp &head = s.items[0];
    if (head.kind != Sexp::Kind::symbol)
      return ParseError{head.pos, ParseErrorKind::syntax,
                        "expected a predicate or logical connective"};
    for (const char *bad : {"or", "forall", "exists", "imply", "when", "either"})
      if (ci_eq(head.text, bad)) return unsupported(head, lower(head.text));
    if (head.text == "=") return unsupported(head, "=");
    if (ci_eq(head.text, "and")) {
      stack.push_back({&s, 1});
      return std::nullopt;
    }
    if (ci_eq(head.text, "not")) {
      if (s.items.size() != 2 || s.items[1].kind != Sexp::Kind::list)
        return ParseError{s.pos, ParseErrorKind::syntax,
                          "(not ...) takes exactly one atom"};
      const Sexp &atom = s.items[1];
      if (!atom.items.empty() && atom.items[0].kind == Sexp::Kind::symbol &&
          reserved_word(atom.items[0].text))
        return ParseError{atom.pos, ParseErrorKind::unsupported_feature,
                          "negation of a non-atomic formula is outside the "
                          "supported subset"};
      out.emplace_back(Polarity::negative, &atom);
      return std::nullopt;
    }
    out.emplace_back(Polarity::positive, &s);
    return std::nullopt;
  };

  if (auto err = handle(form)) return *err;
  while (!stack.empty()) {
    Frame &top = stack.back();
    if (top.next >= top.list->items.size()) {
      stack.pop_back();
      continue;
    }
    const Sexp &child = top.list->items[top.next++];
    if (auto err = handle(child)) return *err;
  }
  return out;
}

}  // namespace detail

// --- domain ----------------------------------------------------------------

namespace detail {

[[nodiscard]] inline std::optional<ParseError> check_declared_name(
    const Sexp &s, const char *what) {
  if (reserved_word(s.text))
    return ParseError{s.pos, ParseErrorKind::syntax,
                      std::string(what) + " name '" + s.text + "' is reserved"};
  return std::nullopt;
}

// Parses one (pred ?a ?b) / (pred obj1 obj2) form into predicate name plus
// raw argument sexps, after arity checking against the declaration.
[[nodiscard]] inline Parsed<const PredicateDecl *> resolve_atom_head(
    const Domain &d, const Sexp &atom) {
  if (atom.kind != Sexp::Kind::list || atom.items.empty() ||
      atom.items[0].kind != Sexp::Kind::symbol)
    return ParseError{atom.pos, ParseErrorKind::syntax, "expected an atom"};
  const Sexp &head = atom.items[0];
  const PredicateDecl *decl = find_predicate(d, head.text);
  if (!decl)
    return ParseError{head.pos, ParseErrorKind::unknown_name,
                      "unknown predicate " + head.text};
  if (decl->param_types.size() != atom.items.size() - 1)
    return ParseError{head.pos, ParseErrorKind::arity_mismatch,
                      "predicate " + head.text + " expects " +
                          std::to_string(decl->param_types.size()) +
                          " arguments, got " +
                          std::to_string(atom.items.size() - 1)};
  return decl;
}

}  // namespace detail

inline Parsed<Domain> parse_domain(std::string_view text) {
  using detail::Sexp;
  auto top_or = detail::read_single(text);
  if (auto *err = std::get_if<ParseError>(&top_or)) return *err;
  const Sexp &top = std::get<Sexp>(top_or);

  if (top.kind != Sexp::Kind::list || top.items.size() < 2 ||
      !detail::is_symbol(top.items[0], "define"))
    return ParseError{top.pos, ParseErrorKind::syntax,
                      "expected (define (domain <name>) ...)"};
  const Sexp &header = top.items[1];
  if (header.kind != Sexp::Kind::list || header.items.size() != 2 ||
      !detail::is_symbol(header.items[0], "domain") ||
      header.items[1].kind != Sexp::Kind::symbol)
    return ParseError{header.pos, ParseErrorKind::syntax,
                      "expected (domain <name>)"};
  if (auto err = detail::check_declared_name(header.items[1], "domain"))
    return *err;

  Domain d;
  d.name = header.items[1].text;

  for (std::size_t si = 2; si < top.items.size(); ++si) {
    const Sexp &section = top.items[si];
    if (section.kind != Sexp::Kind::list || section.items.empty() ||
        section.items[0].kind != Sexp::Kind::keyword)
      return ParseError{section.pos, ParseErrorKind::syntax,
                        "expected a (:<section> ...) form"};
    const std::string &kw = section.items[0].text;

    if (kw == "requirements") {
      for (std::size_t i = 1; i < section.items.size(); ++i) {
        const Sexp &req = section.items[i];
        if (req.kind != Sexp::Kind::keyword)
          return ParseError{req.pos, ParseErrorKind::syntax,
                            "expected a :requirement keyword"};
        if (req.text != "strips" && req.text != "typing")
          return ParseError{req.pos, ParseErrorKind::unsupported_feature,
                            "requirement :" + req.text +
                                " is outside the supported subset"};
      }
    } else if (kw == "types") {
      for (std::size_t i = 1; i < section.items.size(); ++i) {
        const Sexp &t = section.items[i];
        if (t.kind == Sexp::Kind::dash)
          return ParseError{t.pos, ParseErrorKind::unsupported_feature,
                            "type hierarchies are outside the supported "
                            "subset"};
        if (t.kind != Sexp::Kind::symbol)
          return ParseError{t.pos, ParseErrorKind::syntax,
                            "expected a type name"};
        if (auto err = detail::check_declared_name(t, "type")) return *err;
        if (detail::type_declared(d, TypeName{t.text}))
          return ParseError{t.pos, ParseErrorKind::syntax,
                            "duplicate type " + t.text};
        d.types.push_back(TypeName{t.text});
      }
    } else if (kw == "predicates") {
      for (std::size_t i = 1; i < section.items.size(); ++i) {
        const Sexp &pred = section.items[i];
        if (pred.kind != Sexp::Kind::list || pred.items.empty() ||
            pred.items[0].kind != Sexp::Kind::symbol)
          return ParseError{pred.pos, ParseErrorKind::syntax,
                            "expected (predicate ?v - type ...)"};
        const Sexp &name = pred.items[0];
        if (auto err = detail::check_declared_name(name, "predicate"))
          return *err;
        if (detail::find_predicate(d, name.text))
          return ParseError{name.pos, ParseErrorKind::syntax,
                            "duplicate predicate " + name.text};
        PredicateDecl decl{name.text, {}};
        auto err = detail::read_typed_list(
            pred.items, 1, "parameter", Sexp::Kind::variable,
            [&](const Sexp &, const Sexp &type) -> std::optional<ParseError> {
              if (!detail::type_declared(d, TypeName{type.text}))
                return ParseError{type.pos, ParseErrorKind::unknown_name,
                                  "unknown type " + type.text};
              decl.param_types.push_back(TypeName{type.text});
              return std::nullopt;
            });
        if (err) return *err;
        d.predicates.push_back(std::move(decl));
      }
    } else if (kw == "action") {
      if (section.items.size() < 2 ||
          section.items[1].kind != Sexp::Kind::symbol)
        return ParseError{section.pos, ParseErrorKind::syntax,
                          "expected (:action <name> ...)"};
      const Sexp &name = section.items[1];
      if (auto err = detail::check_declared_name(name, "action")) return *err;
      if (detail::find_schema(d, name.text))
        return ParseError{name.pos, ParseErrorKind::syntax,
                          "duplicate action " + name.text};
      ActionSchema schema;
      schema.name = name.text;

      const Sexp *precondition = nullptr;
      const Sexp *effect = nullptr;
      for (std::size_t i = 2; i + 1 < section.items.size(); i += 2) {
        const Sexp &key = section.items[i];
        const Sexp &value = section.items[i + 1];
        if (key.kind != Sexp::Kind::keyword)
          return ParseError{key.pos, ParseErrorKind::syntax,
                            "expected :parameters/:precondition/:effect"};
        if (key.text == "parameters") {
          if (value.kind != Sexp::Kind::list)
            return ParseError{value.pos, ParseErrorKind::syntax,
                              "expected a parameter list"};
          auto err = detail::read_typed_list(
              value.items, 0, "parameter", Sexp::Kind::variable,
              [&](const Sexp &v, const Sexp &type) -> std::optional<ParseError> {
                for (const Parameter &q : schema.params)
                  if (q.name == v.text)
                    return ParseError{v.pos, ParseErrorKind::syntax,
                                      "duplicate parameter ?" + v.text};
                if (!detail::type_declared(d, TypeName{type.text}))
                  return ParseError{type.pos, ParseErrorKind::unknown_name,
                                    "unknown type " + type.text};
                schema.params.push_back({v.text, TypeName{type.text}});
                return std::nullopt;
              });
          if (err) return *err;
        } else if (key.text == "precondition") {
          precondition = &value;
        } else if (key.text == "effect") {
          effect = &value;
        } else {
          return ParseError{key.pos, ParseErrorKind::unsupported_feature,
                            "action section :" + key.text +
                                " is outside the supported subset"};
        }
      }
      if (section.items.size() % 2 != 0)
        return ParseError{section.items.back().pos, ParseErrorKind::syntax,
                          "dangling action section"};

      auto parse_formula =
          [&](const Sexp &form,
              std::vector<SchemaLiteral> &into) -> std::optional<ParseError> {
        auto lits_or = detail::collect_literals(form);
        if (auto *err = std::get_if<ParseError>(&lits_or)) return *err;
        for (auto [polarity, atom] : std::get<0>(lits_or)) {
          auto decl_or = detail::resolve_atom_head(d, *atom);
          if (auto *err = std::get_if<ParseError>(&decl_or)) return *err;
          const PredicateDecl *decl = std::get<const PredicateDecl *>(decl_or);
          SchemaLiteral lit;
          lit.polarity = polarity;
          lit.predicate = decl->name;
          for (std::size_t ai = 1; ai < atom->items.size(); ++ai) {
            const Sexp &arg = atom->items[ai];
            const TypeName &expected = decl->param_types[ai - 1];
            if (arg.kind == Sexp::Kind::variable) {
              auto it = std::find_if(
                  schema.params.begin(), schema.params.end(),
                  [&](const Parameter &q) { return q.name == arg.text; });
              if (it == schema.params.end())
                return ParseError{arg.pos, ParseErrorKind::unknown_name,
                                  "unknown parameter ?" + arg.text};
              if (it->type != expected)
                return ParseError{arg.pos, ParseErrorKind::type_mismatch,
                                  "argument type mismatch: " + it->type.name +
                                      " vs " + expected.name};
              lit.args.emplace_back(VariableRef{arg.text});
            } else if (arg.kind == Sexp::Kind::symbol) {
              return ParseError{arg.pos, ParseErrorKind::unsupported_feature,
                                "constants in action bodies are outside the "
                                "supported subset: " +
                                    arg.text};
            } else {
              return ParseError{arg.pos, ParseErrorKind::syntax,
                                "expected a ?parameter"};
            }
          }
          into.push_back(std::move(lit));
        }
        return std::nullopt;
      };
      if (precondition)
        if (auto err = parse_formula(*precondition, schema.preconditions))
          return *err;
      if (effect)
        if (auto err = parse_formula(*effect, schema.effects)) return *err;
      d.schemas.push_back(std::move(schema));
    } else {
      return ParseError{section.items[0].pos,
                        ParseErrorKind::unsupported_feature,
                        "section :" + kw + " is outside the supported subset"};
    }
  }
  return d;
}

// --- problem ----------------------------------------------------------------

inline Parsed<Problem> parse_problem(std::string_view text, const Domain &d) {
  using detail::Sexp;
  auto top_or = detail::read_single(text);
  if (auto *err = std::get_if<ParseError>(&top_or)) return *err;
  const Sexp &top = std::get<Sexp>(top_or);

  if (top.kind != Sexp::Kind::list || top.items.size() < 2 ||
      !detail::is_symbol(top.items[0], "define"))
    return ParseError{top.pos, ParseErrorKind::syntax,
                      "expected (define (problem <name>) ...)"};
  const Sexp &header = top.items[1];
  if (header.kind != Sexp::Kind::list || header.items.size() != 2 ||
      !detail::is_symbol(header.items[0], "problem") ||
      header.items[1].kind != Sexp::Kind::symbol)
    return ParseError{header.pos, ParseErrorKind::syntax,
                      "expected (problem <name>)"};
  if (auto err = detail::check_declared_name(header.items[1], "problem"))
    return *err;

  Problem p;
  p.name = header.items[1].text;

  // Resolves one ground atom against the domain and declared objects.
  auto parse_ground_atom = [&](const Sexp &atom) -> Parsed<GroundAtom> {
    auto decl_or = detail::resolve_atom_head(d, atom);
    if (auto *err = std::get_if<ParseError>(&decl_or)) return *err;
    const PredicateDecl *decl = std::get<const PredicateDecl *>(decl_or);
    GroundAtom out;
    out.predicate = decl->name;
    for (std::size_t ai = 1; ai < atom.items.size(); ++ai) {
      const Sexp &arg = atom.items[ai];
      if (arg.kind != Sexp::Kind::symbol)
        return ParseError{arg.pos, ParseErrorKind::syntax,
                          "expected an object name"};
      const ObjectRef *obj = detail::find_object(p, arg.text);
      if (!obj)
        return ParseError{arg.pos, ParseErrorKind::unknown_name,
                          "unknown object " + arg.text};
      const TypeName &expected = decl->param_types[ai - 1];
      if (obj->type != expected)
        return ParseError{arg.pos, ParseErrorKind::type_mismatch,
                          "argument type mismatch: " + obj->type.name +
                              " vs " + expected.name};
      out.args.push_back(*obj);
    }
    return out;
  };

  bool saw_domain = false;
  for (std::size_t si = 2; si < top.items.size(); ++si) {
    const Sexp &section = top.items[si];
    if (section.kind != Sexp::Kind::list || section.items.empty() ||
        section.items[0].kind != Sexp::Kind::keyword)
      return ParseError{section.pos, ParseErrorKind::syntax,
                        "expected a (:<section> ...) form"};
    const std::string &kw = section.items[0].text;

    if (kw == "domain") {
      if (section.items.size() != 2 ||
          section.items[1].kind != Sexp::Kind::symbol)
        return ParseError{section.pos, ParseErrorKind::syntax,
                          "expected (:domain <name>)"};
      if (section.items[1].text != d.name)
        return ParseError{section.items[1].pos, ParseErrorKind::unknown_name,
                          "problem is for domain " + section.items[1].text +
                              ", not " + d.name};
      p.domain_name = section.items[1].text;
      saw_domain = true;
    } else if (kw == "objects") {
      auto err = detail::read_typed_list(
          section.items, 1, "object", Sexp::Kind::symbol,
          [&](const Sexp &name, const Sexp &type) -> std::optional<ParseError> {
            if (auto e = detail::check_declared_name(name, "object")) return e;
            if (detail::find_object(p, name.text))
              return ParseError{name.pos, ParseErrorKind::syntax,
                                "duplicate object " + name.text};
            if (!detail::type_declared(d, TypeName{type.text}))
              return ParseError{type.pos, ParseErrorKind::unknown_name,
                                "unknown type " + type.text};
            p.objects.push_back({name.text, TypeName{type.text}});
            return std::nullopt;
          });
      if (err) return *err;
    } else if (kw == "init") {
      for (std::size_t i = 1; i < section.items.size(); ++i) {
        const Sexp &item = section.items[i];
        if (item.kind == Sexp::Kind::list && !item.items.empty() &&
            detail::is_symbol(item.items[0], "not"))
          return ParseError{item.pos, ParseErrorKind::unsupported_feature,
                            "negated init atoms are outside the supported "
                            "subset (worlds are closed)"};
        auto atom_or = parse_ground_atom(item);
        if (auto *err = std::get_if<ParseError>(&atom_or)) return *err;
        p.initial_world.atoms.push_back(std::get<GroundAtom>(atom_or));
      }
    } else if (kw == "goal") {
      if (section.items.size() != 2)
        return ParseError{section.pos, ParseErrorKind::syntax,
                          "expected (:goal <formula>)"};
      auto lits_or = detail::collect_literals(section.items[1]);
      if (auto *err = std::get_if<ParseError>(&lits_or)) return *err;
      for (auto [polarity, atom] : std::get<0>(lits_or)) {
        auto atom_or = parse_ground_atom(*atom);
        if (auto *err = std::get_if<ParseError>(&atom_or)) return *err;
        p.goal.literals.push_back({polarity, std::get<GroundAtom>(atom_or)});
      }
    } else {
      return ParseError{section.items[0].pos,
                        ParseErrorKind::unsupported_feature,
                        "section :" + kw + " is outside the supported subset"};
    }
  }
  if (!saw_domain)
    return ParseError{top.pos, ParseErrorKind::syntax,
                      "problem is missing its (:domain ...) section"};
  return p;
}

// --- plans -------------------------------------------------------------------

inline Parsed<Plan> parse_plan(std::string_view text, const Domain &d,
                               const Problem &p) {
  using detail::Sexp;
  Plan plan;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    auto toks_or = detail::lex(line, line_no);
    if (auto *err = std::get_if<ParseError>(&toks_or)) return *err;
    const auto &toks = std::get<std::vector<detail::Token>>(toks_or);
    if (toks.empty()) continue;

    detail::Reader r{toks};
    auto sexp_or = r.read();
    if (auto *err = std::get_if<ParseError>(&sexp_or)) return *err;
    if (r.at != toks.size())
      return ParseError{toks[r.at].pos, ParseErrorKind::syntax,
                        "one action per line"};
    const Sexp &form = std::get<Sexp>(sexp_or);
    if (form.kind != Sexp::Kind::list || form.items.empty() ||
        form.items[0].kind != Sexp::Kind::symbol)
      return ParseError{form.pos, ParseErrorKind::syntax,
                        "expected (action obj1 obj2 ...)"};

    const Sexp &name = form.items[0];
    const ActionSchema *schema = detail::find_schema(d, name.text);
    if (!schema)
      return ParseError{name.pos, ParseErrorKind::unknown_name,
                        "unknown action " + name.text};
    if (schema->params.size() != form.items.size() - 1)
      return ParseError{name.pos, ParseErrorKind::arity_mismatch,
                        "action " + name.text + " expects " +
                            std::to_string(schema->params.size()) +
                            " arguments, got " +
                            std::to_string(form.items.size() - 1)};
    GroundAction action;
    action.name = schema->name;
    for (std::size_t ai = 1; ai < form.items.size(); ++ai) {
      const Sexp &arg = form.items[ai];
      if (arg.kind != Sexp::Kind::symbol)
        return ParseError{arg.pos, ParseErrorKind::syntax,
                          "expected an object name"};
      const ObjectRef *obj = detail::find_object(p, arg.text);
      if (!obj)
        return ParseError{arg.pos, ParseErrorKind::unknown_name,
                          "unknown object " + arg.text};
      if (obj->type != schema->params[ai - 1].type)
        return ParseError{arg.pos, ParseErrorKind::type_mismatch,
                          "argument type mismatch: " + obj->type.name +
                              " vs " + schema->params[ai - 1].type.name};
      action.args.push_back(*obj);
    }
    plan.actions.push_back(std::move(action));
  }
  return plan;
}

// --- printing ----------------------------------------------------------------

namespace detail {

inline void print_typed_names(std::ostream &os,
                              const std::vector<Parameter> &params) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) os << ' ';
    os << '?' << params[i].name;
    // group a run of equally-typed names under one '- type'
    if (i + 1 == params.size() || params[i + 1].type != params[i].type)
      os << " - " << params[i].type.name;
  }
}

inline void print_schema_formula(std::ostream &os,
                                 const std::vector<SchemaLiteral> &lits) {
  os << "(and";
  for (const SchemaLiteral &l : lits) {
    os << ' ';
    if (l.polarity == Polarity::negative) os << "(not ";
    os << '(' << l.predicate;
    for (const SchemaArg &arg : l.args) {
      os << ' ';
      if (const auto *var = std::get_if<VariableRef>(&arg))
        os << '?' << var->name;
      else
        os << std::get<ObjectRef>(arg).name;
    }
    os << ')';
    if (l.polarity == Polarity::negative) os << ')';
  }
  os << ')';
}

inline void print_atom_sexp(std::ostream &os, const GroundAtom &atom) {
  os << '(' << atom.predicate;
  for (const ObjectRef &a : atom.args) os << ' ' << a.name;
  os << ')';
}

}  // namespace detail

inline std::string print_domain(const Domain &d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  os << "  (:requirements :strips :typing)\n";
  if (!d.types.empty()) {
    os << "  (:types";
    for (const TypeName &t : d.types) os << ' ' << t.name;
    os << ")\n";
  }
  if (!d.predicates.empty()) {
    os << "  (:predicates";
    for (const PredicateDecl &p : d.predicates) {
      os << "\n    (" << p.name;
      std::vector<Parameter> params;
      for (std::size_t i = 0; i < p.param_types.size(); ++i)
        params.push_back({"x" + std::to_string(i), p.param_types[i]});
      if (!params.empty()) {
        os << ' ';
        detail::print_typed_names(os, params);
      }
      os << ')';
    }
    os << ")\n";
  }
  for (const ActionSchema &s : d.schemas) {
    os << "  (:action " << s.name << "\n    :parameters (";
    detail::print_typed_names(os, s.params);
    os << ")\n    :precondition ";
    detail::print_schema_formula(os, s.preconditions);
    os << "\n    :effect ";
    detail::print_schema_formula(os, s.effects);
    os << ")\n";
  }
  os << ")\n";
  return os.str();
}

inline std::string print_problem(const Problem &p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain_name << ")\n";
  if (!p.objects.empty()) {
    os << "  (:objects";
    for (std::size_t i = 0; i < p.objects.size(); ++i) {
      os << ' ' << p.objects[i].name;
      if (i + 1 == p.objects.size() || p.objects[i + 1].type != p.objects[i].type)
        os << " - " << p.objects[i].type.name;
    }
    os << ")\n";
  }
  if (!p.initial_world.atoms.empty()) {
    os << "  (:init";
    for (const GroundAtom &atom : p.initial_world.atoms) {
      os << ' ';
      detail::print_atom_sexp(os, atom);
    }
    os << ")\n";
  }
  os << "  (:goal (and";
  for (const Literal &l : p.goal.literals) {
    os << ' ';
    if (l.polarity == Polarity::negative) os << "(not ";
    detail::print_atom_sexp(os, l.atom);
    if (l.polarity == Polarity::negative) os << ')';
  }
  os << ")))\n";
  return os.str();
}

inline std::string print_plan(const Plan &pl) {
  std::ostringstream os;
  for (const GroundAction &a : pl.actions) {
    os << '(' << a.name;
    for (const ObjectRef &arg : a.args) os << ' ' << arg.name;
    os << ")\n";
  }
  return os.str();
}

}  // namespace plancheck
