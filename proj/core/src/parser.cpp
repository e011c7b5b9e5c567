// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/parser.hpp"

#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>

namespace tagcalc {

std::string render(const ParseError& err) {
  std::ostringstream os;
  os << "parse error at " << err.line << ':' << err.column << ": " << err.message;
  if (!err.expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < err.expected.size(); ++i) {
      if (i > 0) os << ", ";
      os << err.expected[i];
    }
    os << ')';
  }
  return os.str();
}

namespace {

struct Token {
  enum class Type { Ident, Keyword, TagLit, Punct, End };
  Type type = Type::End;
  std::string text;
  std::uint64_t tag_value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "NewTag", "SubTag", "New",  "Match",   "Extract", "Let", "LetRec", "be",
      "in",     "Fix",    "Fold", "Unfold",  "Fst",     "Snd", "nil",    "proj",
      "Top",    "Tag",    "Tagged", "Extends", "Prod",  "Sum", "mu",     "tag",
      "extends"};
  return kw;
}

struct ParseException {
  ParseError error;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) {
        out.push_back(Token{Token::Type::End, "<end of input>", 0, line_, column_});
        return out;
      }
      out.push_back(next_token());
    }
  }

 private:
  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    std::size_t line = line_;
    std::size_t column = column_;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ident.push_back(text_[pos_]);
        advance();
      }
      Token::Type type =
          keywords().count(ident) != 0 ? Token::Type::Keyword : Token::Type::Ident;
      return Token{type, std::move(ident), 0, line, column};
    }
    if (c == '#') {
      advance();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseException{{line, column, "'#' must be followed by a tag number", {}}};
      }
      std::uint64_t value = 0;
      std::string text = "#";
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        text.push_back(text_[pos_]);
        advance();
      }
      return Token{Token::Type::TagLit, std::move(text), value, line, column};
    }
    if (c == ';') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == ';') {
        advance();
        advance();
        return Token{Token::Type::Punct, ";;", 0, line, column};
      }
      throw ParseException{{line, column, "single ';' is not a token (did you mean ';;'?)", {}}};
    }
    static const std::string singles = "[]{}()<>,:=/";
    if (singles.find(c) != std::string::npos) {
      advance();
      return Token{Token::Type::Punct, std::string(1, c), 0, line, column};
    }
    throw ParseException{{line, column, std::string("unexpected character '") + c + "'", {}}};
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ProgramFile program() {
    ProgramFile out;
    while (at_keyword("tag")) out.declarations.push_back(declaration());
    out.main = term();
    expect_end();
    return out;
  }

  TmRef whole_term() {
    TmRef e = term();
    expect_end();
    return e;
  }

  TyRef whole_type() {
    TyRef t = type();
    expect_end();
    return t;
  }

 private:
  // --- token plumbing -----------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i >= tokens_.size()) i = tokens_.size() - 1;  // End token
    return tokens_[i];
  }

  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at_punct(const char* text) const {
    return peek().type == Token::Type::Punct && peek().text == text;
  }

  bool at_keyword(const char* text) const {
    return peek().type == Token::Type::Keyword && peek().text == text;
  }

  bool accept_punct(const char* text) {
    if (!at_punct(text)) return false;
    advance();
    return true;
  }

  void expect_punct(const char* text) {
    if (!accept_punct(text)) fail("expected '" + std::string(text) + "'", {quoted(text)});
  }

  void expect_keyword(const char* text) {
    if (!at_keyword(text)) fail("expected '" + std::string(text) + "'", {quoted(text)});
    advance();
  }

  std::string ident() {
    if (peek().type != Token::Type::Ident) fail("expected an identifier", {"identifier"});
    return advance().text;
  }

  TagId tag_literal() {
    if (peek().type != Token::Type::TagLit) fail("expected a tag literal", {"'#k'"});
    return TagId{advance().tag_value};
  }

  void expect_end() {
    if (peek().type != Token::Type::End) {
      fail("trailing input after the program", {"end of input"});
    }
  }

  static std::string quoted(const char* text) { return "'" + std::string(text) + "'"; }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected) {
    const Token* at = &peek();
    // Anchor unexpected-end errors at the last consumed token.
    if (at->type == Token::Type::End && pos_ > 0) at = &tokens_[pos_ - 1];
    throw ParseException{{at->line, at->column, std::move(message), std::move(expected)}};
  }

  // --- grammar ------------------------------------------------------------

  TagDecl declaration() {
    expect_keyword("tag");
    TagDecl d;
    d.id = tag_literal();
    expect_punct(":");
    d.body = type();
    if (at_keyword("extends")) {
      advance();
      d.parent = tag_literal();
    }
    return d;
  }

  TmRef term() {
    if (at_punct("/")) {
      advance();
      std::string binder = ident();
      expect_punct(":");
      TyRef annot = type();
      expect_punct(",");
      return tm_lam(std::move(binder), std::move(annot), term());
    }
    if (at_keyword("Let")) {
      advance();
      std::string binder = ident();
      expect_keyword("be");
      TmRef bound = term();
      expect_keyword("in");
      return tm_let(std::move(binder), std::move(bound), term());
    }
    if (at_keyword("LetRec")) {
      advance();
      std::string binder = ident();
      expect_punct(":");
      TyRef annot = type();
      expect_keyword("be");
      TmRef bound = term();
      expect_keyword("in");
      return tm_letrec(binder, std::move(annot), std::move(bound), term());
    }
    return application();
  }

  bool starts_atom() const {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Ident:
      case Token::Type::TagLit:
        return true;
      case Token::Type::Punct:
        return t.text == "(" || t.text == "{" || t.text == "<";
      case Token::Type::Keyword:
        return t.text == "NewTag" || t.text == "SubTag" || t.text == "New" ||
               t.text == "Match" || t.text == "Extract" || t.text == "Fix" ||
               t.text == "Fold" || t.text == "Unfold" || t.text == "Fst" || t.text == "Snd" ||
               t.text == "nil";
      case Token::Type::End:
        return false;
    }
    return false;
  }

  TmRef application() {
    TmRef e = projection();
    while (starts_atom()) e = tm_app(std::move(e), projection());
    return e;
  }

  TmRef projection() {
    TmRef e = atom();
    while (at_keyword("proj")) {
      advance();
      e = tm_proj(std::move(e), ident());
    }
    return e;
  }

  TmRef atom() {
    const Token& t = peek();
    if (t.type == Token::Type::Ident) return tm_name(name_var(advance().text));
    if (t.type == Token::Type::TagLit) return tm_name(name_tag(tag_literal()));
    if (t.type == Token::Type::Punct) {
      if (t.text == "(") {
        advance();
        TmRef e = term();
        expect_punct(")");
        return e;
      }
      if (t.text == "<") {
        advance();
        if (accept_punct(">")) return tm_unit();
        TmRef left = term();
        expect_punct(",");
        TmRef right = term();
        expect_punct(">");
        return tm_pair(std::move(left), std::move(right));
      }
      if (t.text == "{") return record_term();
    }
    if (t.type == Token::Type::Keyword) {
      const std::string& kw = t.text;
      if (kw == "nil") {
        advance();
        return tm_rnil();
      }
      if (kw == "NewTag") {
        advance();
        expect_punct("[");
        TyRef body = type();
        expect_punct("]");
        return tm_newtag(std::move(body));
      }
      if (kw == "SubTag") {
        advance();
        expect_punct("[");
        TyRef body = type();
        expect_punct("]");
        expect_punct("(");
        NameRef parent = name();
        expect_punct(")");
        return tm_subtag(std::move(body), std::move(parent));
      }
      if (kw == "New") {
        advance();
        expect_punct("{");
        TmRef payload = term();
        expect_punct("}");
        expect_punct("(");
        NameRef tagname = name();
        expect_punct(")");
        return tm_new(std::move(tagname), std::move(payload));
      }
      if (kw == "Match") {
        advance();
        expect_punct("{");
        TmRef scrutinee = term();
        expect_punct("}");
        expect_punct("(");
        NameRef tagname = name();
        expect_punct(")");
        expect_punct("(");
        std::string binder = ident();
        expect_punct(")");
        expect_punct("{");
        TmRef hit = term();
        expect_punct("}");
        expect_punct("{");
        TmRef miss = term();
        expect_punct("}");
        return tm_match(std::move(scrutinee), std::move(tagname), std::move(binder),
                        std::move(hit), std::move(miss));
      }
      if (kw == "Extract") return unary_braced(&tm_extract);
      if (kw == "Fix") return unary_braced(&tm_fix);
      if (kw == "Snd") return unary_braced(&tm_snd);
      if (kw == "Fold") {
        advance();
        expect_punct("[");
        TyRef annot = type();
        if (annot->kind != Ty::Kind::Mu) {
          fail("Fold annotation must be a mu type", {"'mu(t):T'"});
        }
        expect_punct("]");
        expect_punct("{");
        TmRef body = term();
        expect_punct("}");
        return tm_fold(std::move(annot), std::move(body));
      }
      // Fst / Unfold exist both as term formers (braces) and name formers
      // (parentheses).
      if (kw == "Fst" || kw == "Unfold") {
        if (peek(1).type == Token::Type::Punct && peek(1).text == "(") {
          return tm_name(name());
        }
        if (kw == "Fst") return unary_braced(&tm_fst);
        return unary_braced(&tm_unfold);
      }
    }
    fail("expected a term", {"term"});
  }

  TmRef unary_braced(TmRef (*make)(TmRef)) {
    advance();
    expect_punct("{");
    TmRef e = term();
    expect_punct("}");
    return make(std::move(e));
  }

  TmRef record_term() {
    expect_punct("{");
    std::vector<std::pair<std::string, TmRef>> fields;
    for (;;) {
      std::string label = ident();
      expect_punct("=");
      fields.emplace_back(std::move(label), term());
      if (!accept_punct(";;")) break;
    }
    expect_punct("}");
    TmRef out = tm_rnil();
    for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
      out = tm_rcons(it->first, it->second, std::move(out));
    }
    return out;
  }

  NameRef name() {
    const Token& t = peek();
    if (t.type == Token::Type::Ident) return name_var(advance().text);
    if (t.type == Token::Type::TagLit) return name_tag(tag_literal());
    if (at_keyword("Fst")) {
      advance();
      expect_punct("(");
      NameRef inner = name();
      expect_punct(")");
      return name_fst(std::move(inner));
    }
    if (at_keyword("Unfold")) {
      advance();
      expect_punct("(");
      NameRef inner = name();
      expect_punct(")");
      return name_unfold(std::move(inner));
    }
    fail("expected a name", {"name"});
  }

  TyRef type() {
    const Token& t = peek();
    if (t.type == Token::Type::Ident) return ty_var(advance().text);
    if (at_keyword("Top")) {
      advance();
      return ty_top();
    }
    if (at_keyword("nil")) {
      advance();
      return ty_rnil();
    }
    if (at_keyword("Tag")) {
      advance();
      expect_punct("[");
      TyRef body = type();
      expect_punct("]");
      if (at_keyword("Extends")) {
        advance();
        expect_punct("(");
        NameRef parent = name();
        expect_punct(")");
        return ty_tag_ext(std::move(body), std::move(parent));
      }
      return ty_tag(std::move(body));
    }
    if (at_keyword("Tagged")) {
      advance();
      expect_punct("(");
      NameRef n = name();
      expect_punct(")");
      return ty_tagged(std::move(n));
    }
    if (at_keyword("Prod")) {
      advance();
      expect_punct("[");
      std::string binder = ident();
      expect_punct(":");
      TyRef dom = type();
      expect_punct("]");
      expect_punct(",");
      return ty_prod(std::move(binder), std::move(dom), type());
    }
    if (at_keyword("Sum")) {
      advance();
      expect_punct("[");
      std::string binder = ident();
      expect_punct(":");
      TyRef first = type();
      expect_punct("]");
      return ty_sum(std::move(binder), std::move(first), type());
    }
    if (at_keyword("mu")) {
      advance();
      expect_punct("(");
      std::string binder = ident();
      expect_punct(")");
      expect_punct(":");
      return ty_mu(std::move(binder), type());
    }
    if (at_punct("{")) {
      advance();
      std::vector<std::pair<std::string, TyRef>> fields;
      for (;;) {
        std::string label = ident();
        expect_punct(":");
        fields.emplace_back(std::move(label), type());
        if (!accept_punct(";;")) break;
      }
      expect_punct("}");
      TyRef out = ty_rnil();
      for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
        out = ty_rcons(it->first, it->second, std::move(out));
      }
      return out;
    }
    fail("expected a type", {"type"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

}  // namespace

std::variant<ProgramFile, ParseError> parse_program(std::string_view text) {
  try {
    return Parser(lex(text)).program();
  } catch (const ParseException& ex) {
    return ex.error;
  }
}

std::variant<TmRef, ParseError> parse_term(std::string_view text) {
  try {
    return Parser(lex(text)).whole_term();
  } catch (const ParseException& ex) {
    return ex.error;
  }
}

std::variant<TyRef, ParseError> parse_type(std::string_view text) {
  try {
    return Parser(lex(text)).whole_type();
  } catch (const ParseException& ex) {
    return ex.error;
  }
}

std::optional<std::string> induced_contexts(const ProgramFile& program, TagCtx& sigma_out,
                                            Store& store_out) {
  TagCtx sigma;
  Store store;
  for (const TagDecl& d : program.declarations) {
    if (sigma.lookup(d.id)) {
      return "tag #" + std::to_string(d.id.value) + " declared twice";
    }
    if (!wellformed_ty(*d.body)) {
      return "tag #" + std::to_string(d.id.value) + " has an ill-formed body type";
    }
    if (d.parent) {
      if (!sigma.lookup(*d.parent)) {
        return "tag #" + std::to_string(d.id.value) + " extends undeclared tag #" +
               std::to_string(d.parent->value);
      }
      store = store_extend_child(d.id, *d.parent, store);
      sigma = sigma.updated(d.id, TagBinding{d.body, name_tag(*d.parent)});
    } else {
      store = store_extend_root(d.id, store);
      sigma = sigma.updated(d.id, TagBinding{d.body, nullptr});
    }
  }
  sigma_out = sigma;
  store_out = store;
  return std::nullopt;
}

}  // namespace tagcalc
