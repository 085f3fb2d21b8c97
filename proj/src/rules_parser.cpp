#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "semcloud/error.hpp"
#include "semcloud/rules.hpp"

namespace semcloud {

namespace {

enum class Tok { QName, Var, Number, String, LParen, RParen, Comma, Caret, Arrow, Dot, Label, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}
bool digit(char c) { return c >= '0' && c <= '9'; }
bool alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::QName: return "name";
    case Tok::Var: return "variable";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Caret: return "'^'";
    case Tok::Arrow: return "'->'";
    case Tok::Dot: return "'.'";
    case Tok::Label: return "label";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      const std::size_t line = line_;
      const std::size_t column = column_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, column});
        return out;
      }
      out.push_back(next(line, column));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_blank() {
    for (;;) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) const {
    throw ParseError(line, column, message);
  }

  // Length of a decimal number starting at pos_, or 0.
  std::size_t number_length() const {
    std::size_t i = 0;
    if (peek(i) == '-' || peek(i) == '+') ++i;
    std::size_t digits = 0;
    while (digit(peek(i))) ++i, ++digits;
    if (peek(i) == '.' && digit(peek(i + 1))) {
      ++i;
      while (digit(peek(i))) ++i, ++digits;
    }
    if (digits == 0) return 0;
    if (peek(i) == 'e' || peek(i) == 'E') {
      std::size_t j = i + 1;
      if (peek(j) == '-' || peek(j) == '+') ++j;
      if (digit(peek(j))) {
        while (digit(peek(j))) ++j;
        i = j;
      }
    }
    return i;
  }

  std::string read_ident() {
    std::string out;
    while (ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  Token next(std::size_t line, std::size_t column) {
    const char c = peek();
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, column};
      case ')': advance(); return {Tok::RParen, ")", line, column};
      case ',': advance(); return {Tok::Comma, ",", line, column};
      case '^': advance(); return {Tok::Caret, "^", line, column};
      default: break;
    }
    if (c == '-' && peek(1) == '>') {
      advance(2);
      return {Tok::Arrow, "->", line, column};
    }
    if (c == '[') {
      advance();
      std::string label;
      while (peek() != ']') {
        if (pos_ >= text_.size() || peek() == '\n') fail(line, column, "unterminated rule label");
        label += peek();
        advance();
      }
      advance();
      return {Tok::Label, label, line, column};
    }
    if (c == '"') {
      advance();
      std::string value;
      for (;;) {
        if (pos_ >= text_.size() || peek() == '\n') fail(line, column, "unterminated string");
        char ch = peek();
        advance();
        if (ch == '"') break;
        if (ch == '\\') {
          const char esc = peek();
          advance();
          switch (esc) {
            case 'n': ch = '\n'; break;
            case 't': ch = '\t'; break;
            case '"': ch = '"'; break;
            case '\\': ch = '\\'; break;
            default: fail(line_, column_ - 1, std::string("unknown escape '\\") + esc + "'");
          }
        }
        value += ch;
      }
      return {Tok::String, value, line, column};
    }
    if (c == '?') {
      advance();
      if (!alpha(peek())) fail(line, column, "variable name must start with a letter after '?'");
      return {Tok::Var, "?" + read_ident(), line, column};
    }
    if (const std::size_t n = number_length(); n > 0) {
      const bool followed_by_ident = ident_char(peek(n));
      if (!followed_by_ident) {
        std::string text(text_.substr(pos_, n));
        advance(n);
        return {Tok::Number, text, line, column};
      }
      if (c == '-' || c == '+' || c == '.') fail(line, column, "malformed number");
    }
    if (c == '.') {
      advance();
      return {Tok::Dot, ".", line, column};
    }
    if (ident_char(c)) {
      std::string text = read_ident();
      if (peek() == ':' && ident_char(peek(1))) {
        advance();
        text += ':';
        text += read_ident();
      }
      return {Tok::QName, text, line, column};
    }
    fail(line, column, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const BuiltinRegistry& registry)
      : tokens_(std::move(tokens)), registry_(registry) {}

  std::vector<Rule> run() {
    std::vector<Rule> rules;
    while (peek().kind != Tok::End) rules.push_back(rule());
    return rules;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.line, at.column, message);
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) {
      fail(peek(), "expected " + describe(kind) + ", found " + describe(peek().kind) +
                       (peek().text.empty() ? "" : " '" + peek().text + "'"));
    }
    return take();
  }

  Rule rule() {
    const Token start = peek();
    Rule r;
    r.line = start.line;
    if (peek().kind == Tok::Label) r.label = take().text;
    if (peek().kind != Tok::Arrow) r.body = atoms(false);
    expect(Tok::Arrow);
    head_vars_.clear();
    r.head = atoms(true);
    if (peek().kind == Tok::Dot) take();

    const auto unsafe = unsafe_variables(r);
    if (!unsafe.empty()) {
      std::string names;
      for (const auto& v : unsafe) names += (names.empty() ? "" : ", ") + v;
      fail(head_vars_.at(unsafe.front()),
           "unsafe head variable " + names + " does not occur in the rule body");
    }
    if (r.body.empty()) fail(start, "rule body is empty");
    return r;
  }

  std::vector<RuleAtom> atoms(bool head) {
    std::vector<RuleAtom> out;
    out.push_back(atom(head));
    while (peek().kind == Tok::Caret) {
      take();
      out.push_back(atom(head));
    }
    return out;
  }

  Term argument() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var: {
        const Token& var = take();
        head_vars_.try_emplace(var.text, var);
        return Variable{var.text};
      }
      case Tok::QName: return Name::parse(take().text);
      case Tok::String: return Literal::string(take().text);
      case Tok::Number: {
        const Token& num = take();
        const char* first = num.text.data();
        const char* last = first + num.text.size();
        if (*first == '+') ++first;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
          fail(num, "number out of range: " + num.text);
        }
        return Literal::real(value);
      }
      default:
        fail(t, "expected an argument, found " + describe(t.kind));
    }
  }

  RuleAtom atom(bool head) {
    const Token name_token = expect(Tok::QName);
    const Name name = Name::parse(name_token.text);
    expect(Tok::LParen);
    std::vector<Term> args;
    if (peek().kind != Tok::RParen) {
      args.push_back(argument());
      while (peek().kind == Tok::Comma) {
        take();
        args.push_back(argument());
      }
    }
    expect(Tok::RParen);

    if (const auto* spec = registry_.find(name)) {
      if (head) fail(name_token, "built-in " + name.str() + " cannot appear in a rule head");
      if (!spec->accepts_arity(args.size())) {
        const std::string expected =
            spec->min_arity == spec->max_arity
                ? std::to_string(spec->min_arity)
                : std::to_string(spec->min_arity) + ".." + std::to_string(spec->max_arity);
        fail(name_token, "built-in " + name.str() + " expects " + expected + " arguments, got " +
                             std::to_string(args.size()));
      }
      return BuiltinAtom{name, std::move(args)};
    }
    if (BuiltinRegistry::is_builtin_namespace(name)) {
      std::string known;
      for (const auto& n : registry_.names()) known += (known.empty() ? "" : ", ") + n.str();
      fail(name_token, "unknown built-in " + name.str() + "; registered built-ins: " + known);
    }
    if (args.size() == 1) return ClassAtom{name, std::move(args[0])};
    if (args.size() == 2) return PropertyAtom{name, std::move(args[0]), std::move(args[1])};
    fail(name_token, "atom " + name.str() + " has " + std::to_string(args.size()) +
                         " arguments; classes take 1 and properties 2");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  // First occurrence of each variable in the current head.
  std::map<std::string, Token> head_vars_;
  const BuiltinRegistry& registry_;
};

std::string number_text(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string term_text(const Term& term) {
  if (const auto* v = std::get_if<Variable>(&term)) return v->name;
  if (const auto* n = std::get_if<Name>(&term)) return n->str();
  const auto& lit = std::get<Literal>(term);
  switch (lit.kind()) {
    case Literal::Kind::Real: return number_text(lit.as_real());
    case Literal::Kind::String: return quote(lit.as_string());
    case Literal::Kind::Boolean: return quote(lit.as_bool() ? "true" : "false");
  }
  return {};
}

std::string atom_text(const Name& name, std::span<const Term> args) {
  std::string out = name.str() + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += term_text(args[i]);
  }
  return out + ")";
}

void add_variable(const Term& t, std::set<std::string>& out) {
  if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
}

}  // namespace

std::set<std::string> variables_of(const RuleAtom& atom) {
  std::set<std::string> out;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ClassAtom>) {
          add_variable(a.arg, out);
        } else if constexpr (std::is_same_v<T, PropertyAtom>) {
          add_variable(a.subject, out);
          add_variable(a.object, out);
        } else {
          for (const auto& t : a.args) add_variable(t, out);
        }
      },
      atom);
  return out;
}

std::vector<std::string> unsafe_variables(const Rule& rule) {
  std::set<std::string> bound;
  for (const auto& a : rule.body) bound.merge(variables_of(a));
  std::set<std::string> unsafe;
  for (const auto& a : rule.head) {
    for (const auto& v : variables_of(a)) {
      if (!bound.contains(v)) unsafe.insert(v);
    }
  }
  return {unsafe.begin(), unsafe.end()};
}

std::vector<Rule> parse_rules(std::string_view text, const BuiltinRegistry& registry) {
  return Parser(Lexer(text).run(), registry).run();
}

std::string to_string(const RuleAtom& atom) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ClassAtom>) {
          return atom_text(a.cls, std::span<const Term>(&a.arg, 1));
        } else if constexpr (std::is_same_v<T, PropertyAtom>) {
          const Term args[] = {a.subject, a.object};
          return atom_text(a.property, args);
        } else {
          return atom_text(a.name, a.args);
        }
      },
      atom);
}

std::string to_string(const Rule& rule) {
  std::string out;
  if (!rule.label.empty()) out += "[" + rule.label + "] ";
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    if (i) out += " ^ ";
    out += to_string(rule.body[i]);
  }
  out += " -> ";
  for (std::size_t i = 0; i < rule.head.size(); ++i) {
    if (i) out += " ^ ";
    out += to_string(rule.head[i]);
  }
  return out;
}

std::string print_rules(std::span<const Rule> rules) {
  std::string out;
  for (const auto& r : rules) out += to_string(r) + "\n";
  return out;
}

}  // namespace semcloud
