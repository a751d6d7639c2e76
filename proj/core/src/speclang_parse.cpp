#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gsys/speclang.hpp"

namespace gsys {

namespace {

enum class Tok {
  Ident,
  Int,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Slash,
  Assign,  // :=
  Eq,      // =
  Hash,    // #
  Bullet,  // • or .
  Arrow,   // ->
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Slash: return "'/'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::Hash: return "'#'";
    case Tok::Bullet: return "'•'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) {
        out.push_back(Token{Tok::End, "", here(0)});
        return out;
      }
      out.push_back(next_token());
    }
  }

 private:
  // end_column is inclusive of the token's last code point.
  Span here(int width) const {
    return Span{line_, col_, line_, width > 0 ? col_ + width - 1 : col_};
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        return;
      }
    }
  }

  Token next_token() {
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      Token t{Tok::Ident, word, here(static_cast<int>(word.size()))};
      col_ += static_cast<int>(word.size());
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      Token t{Tok::Int, word, here(static_cast<int>(word.size()))};
      col_ += static_cast<int>(word.size());
      return t;
    }
    // The bullet is the three-byte UTF-8 sequence E2 80 A2 but one column.
    if (static_cast<unsigned char>(c) == 0xE2 && pos_ + 2 < text_.size() &&
        static_cast<unsigned char>(text_[pos_ + 1]) == 0x80 &&
        static_cast<unsigned char>(text_[pos_ + 2]) == 0xA2) {
      Token t{Tok::Bullet, "•", here(1)};
      pos_ += 3;
      col_ += 1;
      return t;
    }
    auto single = [&](Tok kind) {
      Token t{kind, std::string(1, c), here(1)};
      ++pos_;
      ++col_;
      return t;
    };
    switch (c) {
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      case '/': return single(Tok::Slash);
      case '=': return single(Tok::Eq);
      case '#': return single(Tok::Hash);
      case '.': {
        Token t = single(Tok::Bullet);
        t.text = "•";
        return t;
      }
      case ':': {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          Token t{Tok::Assign, ":=", here(2)};
          pos_ += 2;
          col_ += 2;
          return t;
        }
        return single(Tok::Colon);
      }
      case '-': {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          Token t{Tok::Arrow, "->", here(2)};
          pos_ += 2;
          col_ += 2;
          return t;
        }
        break;
      }
      default: break;
    }
    throw SourceError(ErrorKind::ParseError,
                    std::string("unexpected character '") + c + "'", here(1));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Document run() {
    Document doc;
    while (!check(Tok::End)) doc.items.push_back(item());
    return doc;
  }

 private:
  const Token& peek(int ahead = 0) const {
    const std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool check(Tok kind) const { return peek().kind == kind; }

  bool check_word(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  Token advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += expected.size() == 2 ? " or " : ", ";
      if (i + 1 == expected.size() && expected.size() > 2) msg += "or ";
      msg += expected[i];
    }
    msg += ", got ";
    msg += peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
    throw SourceError(ErrorKind::ParseError, msg, peek().span, std::move(expected));
  }

  Token expect(Tok kind) {
    if (!check(kind)) fail({tok_name(kind)});
    return advance();
  }

  Token expect_word(const char* word) {
    if (!check_word(word)) fail({"'" + std::string(word) + "'"});
    return advance();
  }

  // Element names may be plain identifiers or bare integers.
  std::string element_name() {
    if (!check(Tok::Ident) && !check(Tok::Int)) fail({"element name"});
    return advance().text;
  }

  int int_literal() {
    const Token t = expect(Tok::Int);
    return std::stoi(t.text);
  }

  Span close_span(const Span& start) const {
    const Span& prev = tokens_[pos_ > 0 ? pos_ - 1 : 0].span;
    return Span{start.line, start.column, prev.end_line, prev.end_column};
  }

  // --- shared list shapes ---

  std::vector<std::string> element_list_bracketed() {
    expect(Tok::LBracket);
    std::vector<std::string> names;
    if (!check(Tok::RBracket)) {
      names.push_back(element_name());
      while (check(Tok::Comma)) {
        advance();
        names.push_back(element_name());
      }
    }
    expect(Tok::RBracket);
    return names;
  }

  std::vector<std::string> ident_list_braced() {
    expect(Tok::LBrace);
    std::vector<std::string> names;
    if (!check(Tok::RBrace)) {
      names.push_back(expect(Tok::Ident).text);
      while (check(Tok::Comma)) {
        advance();
        names.push_back(expect(Tok::Ident).text);
      }
    }
    expect(Tok::RBrace);
    return names;
  }

  std::vector<int> int_row() {
    expect(Tok::LBracket);
    std::vector<int> row;
    if (!check(Tok::RBracket)) {
      row.push_back(int_literal());
      while (check(Tok::Comma)) {
        advance();
        row.push_back(int_literal());
      }
    }
    expect(Tok::RBracket);
    return row;
  }

  std::vector<std::vector<int>> int_matrix() {
    expect(Tok::LBracket);
    std::vector<std::vector<int>> rows;
    if (!check(Tok::RBracket)) {
      rows.push_back(int_row());
      while (check(Tok::Comma)) {
        advance();
        rows.push_back(int_row());
      }
    }
    expect(Tok::RBracket);
    return rows;
  }

  std::vector<std::vector<std::string>> element_matrix() {
    expect(Tok::LBracket);
    std::vector<std::vector<std::string>> rows;
    if (!check(Tok::RBracket)) {
      rows.push_back(element_list_bracketed());
      while (check(Tok::Comma)) {
        advance();
        rows.push_back(element_list_bracketed());
      }
    }
    expect(Tok::RBracket);
    return rows;
  }

  // --- items ---

  Item item() {
    if (check_word("magma")) return magma_def();
    if (check_word("fn")) return fn_def();
    if (check_word("system")) return system_def();
    if (check_word("team")) return team_def();
    if (check_word("cover")) return cover_def();
    if (check_word("classical")) return classical_def();
    if (check_word("query")) return query_def();
    fail({"'magma'", "'fn'", "'system'", "'team'", "'cover'", "'classical'", "'query'"});
  }

  MagmaDef magma_def() {
    const Span start = peek().span;
    expect_word("magma");
    MagmaDef def;
    def.name = expect(Tok::Ident).text;
    expect(Tok::LBrace);
    expect_word("elements");
    expect(Tok::Colon);
    def.elements = element_list_bracketed();
    expect(Tok::Semi);
    expect_word("op");
    expect(Tok::Colon);
    def.op = element_matrix();
    expect(Tok::Semi);
    expect(Tok::RBrace);
    def.span = close_span(start);
    return def;
  }

  FnDef fn_def() {
    const Span start = peek().span;
    expect_word("fn");
    FnDef def;
    def.name = expect(Tok::Ident).text;
    expect(Tok::Slash);
    def.arity = int_literal();
    if (def.arity < 1)
      throw SourceError(ErrorKind::ParseError, "function arity must be at least 1",
                      close_span(start));
    expect_word("over");
    def.magma = expect(Tok::Ident).text;
    expect(Tok::Eq);
    flatten_values(def.arity, def.values);
    expect(Tok::Semi);
    def.span = close_span(start);
    return def;
  }

  // Value lists nest one bracket level per argument; collect row-major.
  void flatten_values(int depth, std::vector<std::string>& out) {
    if (depth <= 1) {
      for (std::string& name : element_list_bracketed()) out.push_back(std::move(name));
      return;
    }
    expect(Tok::LBracket);
    if (!check(Tok::RBracket)) {
      flatten_values(depth - 1, out);
      while (check(Tok::Comma)) {
        advance();
        flatten_values(depth - 1, out);
      }
    }
    expect(Tok::RBracket);
  }

  SystemDef system_def() {
    const Span start = peek().span;
    expect_word("system");
    SystemDef def;
    def.name = expect(Tok::Ident).text;
    expect_word("over");
    def.magma = expect(Tok::Ident).text;
    expect_word("vars");
    def.vars = ident_list_braced();
    if (check_word("domain")) {
      advance();
      def.domain = expect(Tok::Ident).text;
    }
    expect(Tok::LBrace);
    while (!check(Tok::RBrace)) {
      const Span rule_start = peek().span;
      RuleDef rule;
      rule.var = expect(Tok::Ident).text;
      expect(Tok::Assign);
      rule.term = term();
      expect(Tok::Semi);
      rule.span = close_span(rule_start);
      def.rules.push_back(std::move(rule));
    }
    expect(Tok::RBrace);
    def.span = close_span(start);
    return def;
  }

  Term term() {
    Term lhs = primary();
    while (check(Tok::Bullet)) {
      advance();
      lhs = Term::op(std::move(lhs), primary());
    }
    return lhs;
  }

  Term primary() {
    if (check(Tok::Hash)) {
      advance();
      return Term::elem(element_name());
    }
    if (check(Tok::LParen)) {
      advance();
      Term inner = term();
      expect(Tok::RParen);
      return inner;
    }
    if (check(Tok::Ident)) {
      const std::string name = advance().text;
      if (!check(Tok::LParen)) return Term::var(name);
      advance();
      std::vector<Term> args;
      if (!check(Tok::RParen)) {
        args.push_back(term());
        while (check(Tok::Comma)) {
          advance();
          args.push_back(term());
        }
      }
      expect(Tok::RParen);
      return Term::call(name, std::move(args));
    }
    fail({"variable", "'#'", "'('"});
  }

  TeamDef team_def() {
    const Span start = peek().span;
    expect_word("team");
    TeamDef def;
    def.name = expect(Tok::Ident).text;
    expect_word("over");
    def.magma = expect(Tok::Ident).text;
    expect_word("vars");
    def.vars = ident_list_braced();
    expect(Tok::LBrace);
    while (!check(Tok::RBrace)) {
      expect(Tok::LParen);
      std::vector<std::string> row;
      if (!check(Tok::RParen)) {
        row.push_back(element_name());
        while (check(Tok::Comma)) {
          advance();
          row.push_back(element_name());
        }
      }
      expect(Tok::RParen);
      expect(Tok::Semi);
      def.rows.push_back(std::move(row));
    }
    expect(Tok::RBrace);
    def.span = close_span(start);
    return def;
  }

  CoverDef cover_def() {
    const Span start = peek().span;
    expect_word("cover");
    CoverDef def;
    def.name = expect(Tok::Ident).text;
    expect(Tok::LBrace);
    expect_word("x");
    expect(Tok::Colon);
    def.x = ident_list_braced();
    expect(Tok::Semi);
    expect_word("y");
    expect(Tok::Colon);
    def.y = ident_list_braced();
    expect(Tok::Semi);
    expect(Tok::RBrace);
    def.span = close_span(start);
    return def;
  }

  ClassicalDef classical_def() {
    const Span start = peek().span;
    expect_word("classical");
    ClassicalDef def;
    def.name = expect(Tok::Ident).text;
    expect(Tok::LBrace);
    auto int_field = [&](const char* label) {
      expect_word(label);
      expect(Tok::Colon);
      const int value = int_literal();
      expect(Tok::Semi);
      return value;
    };
    def.external = int_field("external");
    def.motor = int_field("motor");
    def.sensor = int_field("sensor");
    def.internal = int_field("internal");
    expect_word("transition");
    expect(Tok::Colon);
    def.transition = int_matrix();
    expect(Tok::Semi);
    expect_word("sensor_map");
    expect(Tok::Colon);
    def.sensor_map = int_row();
    expect(Tok::Semi);
    expect_word("internal_transition");
    expect(Tok::Colon);
    def.internal_transition = int_matrix();
    expect(Tok::Semi);
    expect_word("policy");
    expect(Tok::Colon);
    def.policy = int_row();
    expect(Tok::Semi);
    expect(Tok::RBrace);
    def.span = close_span(start);
    return def;
  }

  QueryDef query_def() {
    const Span start = peek().span;
    expect_word("query");
    QueryDef def;
    def.name = expect(Tok::Ident).text;
    expect(Tok::Colon);
    def.form = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (!check(Tok::RParen)) {
      def.args.push_back(query_arg());
      while (check(Tok::Comma)) {
        advance();
        def.args.push_back(query_arg());
      }
    }
    expect(Tok::RParen);
    expect(Tok::Semi);
    def.span = close_span(start);
    return def;
  }

  QueryArg query_arg() {
    const Span start = peek().span;
    QueryArg arg;
    if (check(Tok::Ident)) {
      arg.kind = QueryArg::Kind::Name;
      arg.name = advance().text;
      arg.span = close_span(start);
      return arg;
    }
    if (check(Tok::Int)) {
      arg.kind = QueryArg::Kind::Int;
      arg.number = std::stoll(advance().text);
      arg.span = close_span(start);
      return arg;
    }
    if (check(Tok::LBracket)) {
      advance();
      arg.kind = QueryArg::Kind::List;
      if (!check(Tok::RBracket)) {
        arg.names.push_back(expect(Tok::Ident).text);
        while (check(Tok::Comma)) {
          advance();
          arg.names.push_back(expect(Tok::Ident).text);
        }
      }
      expect(Tok::RBracket);
      arg.span = close_span(start);
      return arg;
    }
    if (check(Tok::LBrace)) {
      advance();
      // Empty braces denote an empty variable set.
      if (check(Tok::RBrace)) {
        advance();
        arg.kind = QueryArg::Kind::Set;
        arg.span = close_span(start);
        return arg;
      }
      const std::string first = expect(Tok::Ident).text;
      if (check(Tok::Eq) || check(Tok::Arrow)) {
        arg.kind = check(Tok::Eq) ? QueryArg::Kind::Assign : QueryArg::Kind::Map;
        const Tok sep = advance().kind;
        auto rhs = [&]() {
          return sep == Tok::Eq ? element_name() : expect(Tok::Ident).text;
        };
        arg.pairs.emplace_back(first, rhs());
        while (check(Tok::Comma)) {
          advance();
          const std::string lhs = expect(Tok::Ident).text;
          if (!check(sep)) fail({tok_name(sep)});
          advance();
          arg.pairs.emplace_back(lhs, rhs());
        }
      } else {
        arg.kind = QueryArg::Kind::Set;
        arg.names.push_back(first);
        while (check(Tok::Comma)) {
          advance();
          arg.names.push_back(expect(Tok::Ident).text);
        }
      }
      expect(Tok::RBrace);
      arg.span = close_span(start);
      return arg;
    }
    fail({"name", "integer", "'{'", "'['"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Document parse(const std::string& text) {
  return Parser(Lexer(text).run()).run();
}

Config parse_config_literal(const std::string& text, const VarSet& vars, const Magma& m) {
  // Tolerates both "a=1,b=0" and "{a=1, b=0}".
  std::vector<Token> toks = Lexer(text).run();
  std::size_t i = 0;
  auto at = [&](std::size_t k) -> const Token& {
    return k < toks.size() ? toks[k] : toks.back();
  };
  const bool braced = at(i).kind == Tok::LBrace;
  if (braced) ++i;
  std::vector<std::pair<std::string, std::string>> pairs;
  if (at(i).kind == Tok::Ident) {
    for (;;) {
      if (at(i).kind != Tok::Ident)
        throw SourceError(ErrorKind::ParseError, "expected variable name", at(i).span,
                        {"identifier"});
      const std::string var = at(i++).text;
      if (at(i).kind != Tok::Eq)
        throw SourceError(ErrorKind::ParseError, "expected '=' after variable name",
                        at(i).span, {"'='"});
      ++i;
      if (at(i).kind != Tok::Ident && at(i).kind != Tok::Int)
        throw SourceError(ErrorKind::ParseError, "expected element name", at(i).span,
                        {"element name"});
      pairs.emplace_back(var, at(i++).text);
      if (at(i).kind == Tok::Comma) {
        ++i;
        continue;
      }
      break;
    }
  }
  if (braced) {
    if (at(i).kind != Tok::RBrace)
      throw SourceError(ErrorKind::ParseError, "expected '}'", at(i).span, {"'}'"});
    ++i;
  }
  if (at(i).kind != Tok::End)
    throw SourceError(ErrorKind::ParseError, "trailing input after configuration",
                    at(i).span, {"end of input"});

  std::vector<int> values(static_cast<std::size_t>(vars.size()), -1);
  for (const auto& [var, elem] : pairs) {
    if (!vars.contains(var))
      throw Error(ErrorKind::UnknownVariable,
                  "'" + var + "' is not a variable of the system");
    const std::optional<int> idx = m.element_index(elem);
    if (!idx)
      throw Error(ErrorKind::UnknownElement, "'" + elem + "' is not a magma element");
    std::size_t pos = 0;
    while (vars.names()[pos] != var) ++pos;
    if (values[pos] != -1)
      throw Error(ErrorKind::BadParameter, "variable '" + var + "' assigned twice");
    values[pos] = *idx;
  }
  for (std::size_t pos = 0; pos < values.size(); ++pos)
    if (values[pos] == -1)
      throw Error(ErrorKind::BadParameter,
                  "variable '" + vars.names()[pos] + "' not assigned");
  return Config::make(vars, std::move(values));
}

namespace {

bool rules_equal(const std::vector<RuleDef>& a, const std::vector<RuleDef>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].var != b[i].var || !(a[i].term == b[i].term)) return false;
  return true;
}

struct ItemEq {
  bool operator()(const MagmaDef& a, const MagmaDef& b) const {
    return a.name == b.name && a.elements == b.elements && a.op == b.op;
  }
  bool operator()(const FnDef& a, const FnDef& b) const {
    return a.name == b.name && a.arity == b.arity && a.magma == b.magma &&
           a.values == b.values;
  }
  bool operator()(const SystemDef& a, const SystemDef& b) const {
    return a.name == b.name && a.magma == b.magma && a.vars == b.vars &&
           a.domain == b.domain && rules_equal(a.rules, b.rules);
  }
  bool operator()(const TeamDef& a, const TeamDef& b) const {
    return a.name == b.name && a.magma == b.magma && a.vars == b.vars && a.rows == b.rows;
  }
  bool operator()(const CoverDef& a, const CoverDef& b) const {
    return a.name == b.name && a.x == b.x && a.y == b.y;
  }
  bool operator()(const ClassicalDef& a, const ClassicalDef& b) const {
    return a.name == b.name && a.external == b.external && a.motor == b.motor &&
           a.sensor == b.sensor && a.internal == b.internal &&
           a.transition == b.transition && a.sensor_map == b.sensor_map &&
           a.internal_transition == b.internal_transition && a.policy == b.policy;
  }
  bool operator()(const QueryDef& a, const QueryDef& b) const {
    if (a.name != b.name || a.form != b.form || a.args.size() != b.args.size())
      return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const QueryArg& x = a.args[i];
      const QueryArg& y = b.args[i];
      if (x.kind != y.kind || x.name != y.name || x.number != y.number ||
          x.names != y.names || x.pairs != y.pairs)
        return false;
    }
    return true;
  }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool structurally_equal(const Document& a, const Document& b) {
  if (a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (!std::visit(ItemEq{}, a.items[i], b.items[i])) return false;
  return true;
}

}  // namespace gsys
