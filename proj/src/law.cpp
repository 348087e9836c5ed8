#include "atc/law.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace atc {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

bool operator==(const Law& a, const Law& b) {
  return a.kind == b.kind && a.action == b.action && a.pre == b.pre && a.post == b.post;
}

bool operator<(const Law& a, const Law& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.action != b.action) return a.action < b.action;
  if (!(a.pre == b.pre)) return a.pre < b.pre;
  return a.post < b.post;
}

// ------------------------------------------------------------ ActionTheory

bool ActionTheory::add(const Law& law) {
  if (law.kind == Law::Kind::Static) {
    check_signature(law.pre, sig_);
    if (std::find(statics_.begin(), statics_.end(), law.pre) != statics_.end()) return false;
    statics_.push_back(law.pre);
    return true;
  }
  if (law.action < 0 || law.action >= sig_.num_actions()) {
    throw SignatureError("law refers to an undeclared action");
  }
  check_signature(law.pre, sig_);
  check_signature(law.post, sig_);
  auto& bucket = (law.kind == Law::Kind::Effect) ? effects_ : execs_;
  if (std::find(bucket.begin(), bucket.end(), law) != bucket.end()) return false;
  bucket.push_back(law);
  return true;
}

bool ActionTheory::remove(const Law& law) {
  if (law.kind == Law::Kind::Static) {
    auto it = std::find(statics_.begin(), statics_.end(), law.pre);
    if (it == statics_.end()) return false;
    statics_.erase(it);
    return true;
  }
  auto& bucket = (law.kind == Law::Kind::Effect) ? effects_ : execs_;
  auto it = std::find(bucket.begin(), bucket.end(), law);
  if (it == bucket.end()) return false;
  bucket.erase(it);
  return true;
}

bool ActionTheory::contains(const Law& law) const {
  if (law.kind == Law::Kind::Static) {
    return std::find(statics_.begin(), statics_.end(), law.pre) != statics_.end();
  }
  const auto& bucket = (law.kind == Law::Kind::Effect) ? effects_ : execs_;
  return std::find(bucket.begin(), bucket.end(), law) != bucket.end();
}

std::vector<Law> ActionTheory::laws() const {
  std::vector<Law> out;
  for (const auto& f : statics_) out.push_back(Law::static_law(f));
  for (int a = 0; a < sig_.num_actions(); ++a) {
    for (const auto& l : effects_) {
      if (l.action == a) out.push_back(l);
    }
  }
  for (int a = 0; a < sig_.num_actions(); ++a) {
    for (const auto& l : execs_) {
      if (l.action == a) out.push_back(l);
    }
  }
  return out;
}

std::vector<Law> ActionTheory::effects_for(int action) const {
  std::vector<Law> out;
  for (const auto& l : effects_) {
    if (l.action == action) out.push_back(l);
  }
  return out;
}

std::vector<Law> ActionTheory::execs_for(int action) const {
  std::vector<Law> out;
  for (const auto& l : execs_) {
    if (l.action == action) out.push_back(l);
  }
  return out;
}

std::vector<int> ActionTheory::actions_with_laws() const {
  std::vector<int> out;
  for (int a = 0; a < sig_.num_actions(); ++a) {
    const bool has = std::any_of(effects_.begin(), effects_.end(), [a](const Law& l) { return l.action == a; }) ||
                     std::any_of(execs_.begin(), execs_.end(), [a](const Law& l) { return l.action == a; });
    if (has) out.push_back(a);
  }
  return out;
}

bool ActionTheory::same_laws(const ActionTheory& other) const {
  if (!(sig_ == other.sig_)) return false;
  auto a = laws();
  auto b = other.laws();
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

ActionLaws laws_for_action(const ActionTheory& t, int action) {
  if (action < 0 || action >= t.sig().num_actions()) throw SignatureError("unknown action");
  return {t.effects_for(action), t.execs_for(action)};
}

ActionLaws laws_for_action(const ActionTheory& t, std::string_view action) {
  return laws_for_action(t, t.sig().require_action(action));
}

// ------------------------------------------------------------------- Lexer

namespace {

enum class Tok {
  Ident, True, False, Not, And, Or, Xor, Imp, Iff, LParen, RParen,
  LBrack, RBrack, Lt, Gt, Arrow, Semi, Newline, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), line, c}); };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    const int start = col;
    if (c == '\n') {
      push(Tok::Newline, "\\n", start);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(static_cast<unsigned char>(src[j]))) ++j;
      std::string word(src.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      if (word == "false") k = Tok::False;
      push(k, word, start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static const Sym syms[] = {{"<->", Tok::Iff}, {"->", Tok::Imp}, {"=>", Tok::Arrow},
                               {"~", Tok::Not},   {"!", Tok::Not},  {"&", Tok::And},
                               {"|", Tok::Or},    {"^", Tok::Xor},  {"(", Tok::LParen},
                               {")", Tok::RParen}, {"[", Tok::LBrack}, {"]", Tok::RBrack},
                               {"<", Tok::Lt},    {">", Tok::Gt},   {";", Tok::Semi}};
    bool matched = false;
    for (const auto& s : syms) {
      if (starts(s.text)) {
        push(s.kind, std::string(s.text), start);
        i += s.text.size();
        col += static_cast<int>(s.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, start);
  }
  out.push_back({Tok::End, "<end>", line, col});
  return out;
}

// ------------------------------------------------------------------ Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature* sig) : toks_(std::move(toks)), sig_(sig) {}

  void set_signature(const Signature* sig) { sig_ = sig; }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }

  void skip_newlines() {
    while (at(Tok::Newline)) next();
  }

  // bool := iff
  Formula formula() { return iff_level(); }

  Law law() {
    const Token kw = expect(Tok::Ident, "law keyword");
    if (kw.text == "static") {
      return Law::static_law(formula());
    }
    if (kw.text == "effect") {
      Formula pre = formula();
      expect(Tok::Arrow, "'=>'");
      expect(Tok::LBrack, "'['");
      const int a = action_name();
      expect(Tok::RBrack, "']'");
      Formula post = formula();
      return Law::effect(std::move(pre), a, std::move(post));
    }
    if (kw.text == "exec") {
      Formula pre = formula();
      expect(Tok::Arrow, "'=>'");
      expect(Tok::Lt, "'<'");
      const int a = action_name();
      expect(Tok::Gt, "'>'");
      return Law::exec(std::move(pre), a);
    }
    throw ParseError("unknown law keyword '" + kw.text + "'", kw.line, kw.col);
  }

  void end_of_law() {
    if (!at(Tok::Newline) && !at(Tok::End) && !at(Tok::Semi)) {
      if (at(Tok::LBrack) || at(Tok::Lt)) {
        throw UnsupportedQuery("modal operator outside the law fragment at " +
                               std::to_string(peek().line) + ":" + std::to_string(peek().col));
      }
      fail("unexpected '" + peek().text + "' after law");
    }
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> names;
    while (at(Tok::Ident)) names.push_back(next().text);
    return names;
  }

 private:
  int action_name() {
    const Token t = expect(Tok::Ident, "action name");
    if (auto i = sig_->action_index(t.text)) return *i;
    throw ParseError("undeclared action '" + t.text + "'", t.line, t.col);
  }

  Formula iff_level() {
    Formula f = imp_level();
    while (at(Tok::Iff)) {
      next();
      f = iff(f, imp_level());
    }
    return f;
  }

  Formula imp_level() {
    Formula f = xor_level();
    if (at(Tok::Imp)) {
      next();
      return implies(f, imp_level());
    }
    return f;
  }

  Formula xor_level() {
    Formula f = or_level();
    while (at(Tok::Xor)) {
      next();
      f = exclusive_or(f, or_level());
    }
    return f;
  }

  Formula or_level() {
    Formula f = and_level();
    while (at(Tok::Or)) {
      next();
      f = f || and_level();
    }
    return f;
  }

  Formula and_level() {
    Formula f = unary();
    while (at(Tok::And)) {
      next();
      f = f && unary();
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      next();
      return !unary();
    }
    return primary();
  }

  Formula primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::True: next(); return Formula::top();
      case Tok::False: next(); return Formula::bot();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        next();
        if (auto i = sig_->atom_index(t.text)) return Formula::atom(*i);
        throw ParseError("undeclared atom '" + t.text + "'", t.line, t.col);
      }
      case Tok::LBrack:
      case Tok::Lt:
        throw UnsupportedQuery("modal operator outside the law fragment at " +
                               std::to_string(t.line) + ":" + std::to_string(t.col));
      default:
        fail("expected a formula, found '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature* sig_;
};

}  // namespace

ParseResult parse_theory_with_warnings(std::string_view text) {
  Parser p(lex(text), nullptr);
  p.skip_newlines();
  const Token kw = p.expect(Tok::Ident, "'theory'");
  if (kw.text != "theory") throw ParseError("expected 'theory'", kw.line, kw.col);
  const std::string name = p.expect(Tok::Ident, "theory name").text;
  p.expect(Tok::Newline, "end of line");
  p.skip_newlines();

  auto decl = [&](const char* keyword) {
    const Token t = p.expect(Tok::Ident, keyword);
    if (t.text != keyword) throw ParseError(std::string("expected '") + keyword + "'", t.line, t.col);
    auto names = p.ident_list();
    if (names.empty()) p.fail(std::string("empty ") + keyword + " declaration");
    if (!p.at(Tok::End)) p.expect(Tok::Newline, "end of line");
    p.skip_newlines();
    return names;
  };
  auto atoms = decl("atoms");
  auto actions = decl("actions");

  ParseResult result{ActionTheory(name, Signature(std::move(atoms), std::move(actions))), {}};
  p.set_signature(&result.theory.sig());
  while (!p.at(Tok::End)) {
    Law l = p.law();
    p.end_of_law();
    result.theory.add(l);
    p.skip_newlines();
  }

  const auto& t = result.theory;
  for (int a = 0; a < t.sig().num_actions(); ++a) {
    if (!t.execs_for(a).empty() && t.effects_for(a).empty()) {
      result.warnings.push_back("executability laws for action '" + t.sig().actions()[a] +
                                "' whose effects are not stated");
    }
  }
  return result;
}

ActionTheory parse_theory(std::string_view text) { return parse_theory_with_warnings(text).theory; }

Formula parse_formula(std::string_view text, const Signature& sig) {
  Parser p(lex(text), &sig);
  Formula f = p.formula();
  if (!p.at(Tok::End)) p.fail("unexpected '" + p.peek().text + "'");
  return f;
}

Law parse_law(std::string_view text, const Signature& sig) {
  Parser p(lex(text), &sig);
  Law l = p.law();
  p.end_of_law();
  if (!p.at(Tok::End)) p.fail("unexpected '" + p.peek().text + "'");
  return l;
}

Query parse_query(std::string_view text, const Signature& sig) {
  Parser p(lex(text), &sig);
  Query q;
  p.skip_newlines();
  while (true) {
    q.push_back(p.law());
    p.end_of_law();
    p.skip_newlines();
    if (p.at(Tok::Semi)) {
      p.next();
      p.skip_newlines();
      continue;
    }
    break;
  }
  if (!p.at(Tok::End)) p.fail("unexpected '" + p.peek().text + "'");
  return q;
}

// ---------------------------------------------------------------- Printing

std::string render_law(const Law& law, const Signature& sig) {
  switch (law.kind) {
    case Law::Kind::Static: return "static " + law.pre.to_string(sig);
    case Law::Kind::Effect:
      return "effect " + law.pre.to_string(sig) + " => [" + sig.actions()[law.action] + "] " +
             law.post.to_string(sig);
    case Law::Kind::Exec:
      return "exec " + law.pre.to_string(sig) + " => <" + sig.actions()[law.action] + ">";
  }
  return {};
}

std::string render_theory(const ActionTheory& t) {
  std::string out = "theory " + t.name() + "\natoms";
  for (const auto& a : t.sig().atoms()) out += " " + a;
  out += "\nactions";
  for (const auto& a : t.sig().actions()) out += " " + a;
  out += "\n";
  for (const auto& l : t.laws()) out += render_law(l, t.sig()) + "\n";
  return out;
}

}  // namespace atc
