#include "akb/parser.hpp"

#include <optional>
#include <utility>

#include "akb/blp.hpp"
#include "lexer.hpp"
#include "syntax.hpp"

namespace akb {

namespace {

std::string format_message(const SourceSpan& span, const std::string& message) {
  return span.file + ":" + std::to_string(span.line) + ":" +
         std::to_string(span.column) + ": " + message;
}

}  // namespace

ParseError::ParseError(ErrorCode code, SourceSpan span, std::string message,
                       std::vector<std::string> expected)
    : Error(code, format_message(span, message)),
      span_(std::move(span)),
      expected_(std::move(expected)) {}

namespace {

using detail::Tok;
using detail::Token;

bool is_action_word(std::string_view w) { return w == "out" || w == "in" || w == "read"; }

class Parser {
 public:
  Parser(std::string_view text, std::string file)
      : file_(std::move(file)), toks_(detail::lex(text, file_)) {}

  Net scenario() {
    Net net;
    if (!at_word("lattice")) fail({"'lattice'"});
    net.lattice = lattice();
    while (!at(Tok::End)) {
      if (at_word("lattice"))
        throw ParseError(ErrorCode::DuplicateLatticeDecl, span(),
                         "a scenario declares exactly one lattice");
      if (!at_word("location")) fail({"'location'", "end of input"});
      net.items.push_back(location(*net.lattice));
      net.items.back().uid = net.next_uid++;
    }
    return net;
  }

  Policy standalone_policy() {
    Policy p = policy();
    expect(Tok::End);
    return p;
  }

  Process standalone_process() {
    Process p = process();
    expect(Tok::End);
    return p;
  }

 private:
  // -- token plumbing -------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view w, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == w;
  }
  Token take() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  SourceSpan span(const Token& t) const { return {file_, t.line, t.column}; }
  SourceSpan span() const { return span(peek()); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found =
        t.kind == Tok::End ? "end of input"
        : t.kind == Tok::String ? detail::quote(t.text)
        : t.text.empty() ? std::string(detail::describe(t.kind))
                         : "'" + t.text + "'";
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    throw ParseError(ErrorCode::SyntaxError, span(), msg, std::move(expected));
  }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    take();
    return true;
  }

  Token expect(Tok kind) {
    if (!at(kind)) fail({std::string(detail::describe(kind))});
    return take();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail({"'" + std::string(w) + "'"});
    take();
  }

  bool at_name() const {
    return at(Tok::Ident) || at(Tok::Number) || at(Tok::String);
  }
  // Any spelling of a name: identifier, number or quoted string.
  std::string name(const char* what) {
    if (!at_name()) fail({what});
    return take().text;
  }

  // -- lattice and locations ------------------------------------------------

  LatticePtr lattice() {
    const Token kw = take();
    expect(Tok::LBrace);
    expect_word("levels");
    expect(Tok::Colon);
    std::vector<std::string> names;
    std::vector<Token> name_toks;
    do {
      name_toks.push_back(peek());
      names.push_back(name("level name"));
    } while (accept(Tok::Comma));
    expect(Tok::Semi);
    std::vector<OrderEdge> edges;
    std::vector<Token> edge_toks;
    if (at_word("order")) {
      take();
      expect(Tok::Colon);
      if (!at(Tok::Semi)) {
        do {
          edge_toks.push_back(peek());
          OrderEdge e;
          e.lower = name("level name");
          expect(Tok::Lt);
          e.upper = name("level name");
          edges.push_back(std::move(e));
        } while (accept(Tok::Comma));
      }
      expect(Tok::Semi);
    }
    expect(Tok::RBrace);
    try {
      return std::make_shared<const Lattice>(Lattice::build(names, edges));
    } catch (const Error& e) {
      SourceSpan where = span(kw);
      if (e.code() == ErrorCode::UnknownLevelName) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
          bool known_lower = false, known_upper = false;
          for (const auto& n : names) {
            known_lower |= n == edges[i].lower;
            known_upper |= n == edges[i].upper;
          }
          if (!known_lower || !known_upper) {
            where = span(edge_toks[i]);
            break;
          }
        }
      }
      throw ParseError(e.code(), where, e.what());
    }
  }

  Level level_ref(const Lattice& lat) {
    const Token t = peek();
    std::string n = name("level name");
    if (auto lv = lat.find(n)) return *lv;
    throw ParseError(ErrorCode::UnknownLevelName, span(t),
                     "unknown level '" + n + "'");
  }

  LocatedItem location(const Lattice& lat) {
    take();
    LocatedItem item;
    item.name = name("location name");
    expect(Tok::LBrace);
    bool have_state = false, have_body = false;
    while (!at(Tok::RBrace)) {
      if (at_word("state") && !have_state) {
        take();
        expect(Tok::Lt);
        auto& st = item.annot.state;
        st.clearance = level_ref(lat);
        expect(Tok::Comma);
        st.current = level_ref(lat);
        expect(Tok::Comma);
        st.history = level_ref(lat);
        expect(Tok::Comma);
        st.classification = level_ref(lat);
        expect(Tok::Gt);
        have_state = true;
      } else if (at_word("policy") && !item.annot.policy) {
        take();
        item.annot.policy = std::make_shared<const Policy>(policy());
      } else if (at_word("process") && !have_body) {
        take();
        item.body = process();
        have_body = true;
      } else if (at_word("tuple") && !have_body) {
        take();
        item.body = tuple();
        have_body = true;
      } else if (at_word("virtual") && item.declared) {
        take();
        item.declared = false;
      } else {
        std::vector<std::string> exp;
        if (!have_state) exp.push_back("'state'");
        if (!item.annot.policy) exp.push_back("'policy'");
        if (!have_body) {
          exp.push_back("'process'");
          exp.push_back("'tuple'");
        }
        if (item.declared) exp.push_back("'virtual'");
        exp.push_back("'}'");
        fail(std::move(exp));
      }
      expect(Tok::Semi);
    }
    if (!have_state || !have_body) {
      fail({have_state ? "'process' or 'tuple'" : "'state'"});
    }
    take();
    return item;
  }

  Tuple tuple() {
    expect(Tok::Lt);
    Tuple t;
    if (!at(Tok::Gt)) {
      do t.push_back(name("tuple component"));
      while (accept(Tok::Comma));
    }
    expect(Tok::Gt);
    return t;
  }

  // -- terms, patterns, actions ---------------------------------------------

  LocRef loc_from(const Token& t) {
    if (t.kind == Tok::Ident) {
      if (detail::is_reserved(t.text))
        throw ParseError(ErrorCode::SyntaxError, span(t),
                         "reserved word '" + t.text + "' cannot name a location");
      if (detail::is_var_name(t.text)) return LocRef::var(t.text);
    }
    return LocRef::literal(t.text);
  }

  LocRef locref() {
    if (!at_name()) fail({"location or variable"});
    return loc_from(take());
  }

  Pattern pattern() {
    if (at(Tok::Question)) {
      take();
      const Token t = peek();
      if (t.kind != Tok::Ident || !detail::is_var_name(t.text)) fail({"variable name"});
      take();
      return Pattern::binder(t.text);
    }
    if (accept(Tok::Wildcard)) return Pattern::wildcard();
    if (accept(Tok::Rest)) return Pattern::rest();
    if (!at_name()) fail({"'?'", "'_'", "'_*'", "location or variable"});
    LocRef r = loc_from(take());
    return r.is_var() ? Pattern::var(r.name) : Pattern::literal(r.name);
  }

  std::vector<Pattern> pattern_list() {
    expect(Tok::LParen);
    std::vector<Pattern> out;
    if (!at(Tok::RParen)) {
      do out.push_back(pattern());
      while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    return out;
  }

  bool at_action() const {
    return peek().kind == Tok::Ident && is_action_word(peek().text) &&
           peek(1).kind == Tok::LParen;
  }

  Action action() {
    if (!at_action()) fail({"'out'", "'in'", "'read'"});
    Action a;
    const std::string kw = take().text;
    a.kind = kw == "out" ? ActionKind::Out : kw == "in" ? ActionKind::In : ActionKind::Read;
    a.args = pattern_list();
    expect(Tok::At);
    a.target = locref();
    return a;
  }

  // -- processes ------------------------------------------------------------

  Process process() {
    std::vector<Process> parts;
    parts.push_back(choice());
    while (at(Tok::Bar)) {
      take();
      parts.push_back(choice());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Process::parallel(std::move(parts));
  }

  Process choice() {
    if (!at_action()) return continuation();
    std::vector<Branch> branches;
    do {
      Action a = action();
      expect(Tok::Dot);
      branches.push_back(Branch{std::move(a), continuation()});
    } while (accept(Tok::Plus));
    return Process::choice(std::move(branches));
  }

  Process continuation() {
    if (at(Tok::Number) && peek().text == "0") {
      take();
      return Process::nil();
    }
    if (at(Tok::Star)) {
      take();
      return Process::replicate(continuation());
    }
    if (at(Tok::LParen)) {
      take();
      Process p = process();
      expect(Tok::RParen);
      return p;
    }
    if (at_action()) {
      Action a = action();
      expect(Tok::Dot);
      return Process::prefix(std::move(a), continuation());
    }
    fail({"'0'", "'*'", "'('", "action"});
  }

  // -- policies -------------------------------------------------------------

  // `(x)` and `(+)` in operator position.
  std::optional<BinOp> k_operator() const {
    if (!at(Tok::LParen) || peek(2).kind != Tok::RParen) return std::nullopt;
    if (peek(1).kind == Tok::Plus) return BinOp::Oplus;
    if (peek(1).kind == Tok::Ident && peek(1).text == "x") return BinOp::Otimes;
    return std::nullopt;
  }

  std::optional<BinOp> t_operator() const {
    if (at(Tok::AndAnd)) return BinOp::And;
    if (at(Tok::OrOr)) return BinOp::Or;
    return std::nullopt;
  }

  void skip_operator(BinOp op) {
    const std::size_t n = (op == BinOp::Oplus || op == BinOp::Otimes) ? 3 : 1;
    for (std::size_t i = 0; i < n; ++i) take();
  }

  Policy policy() {
    Policy lhs = policy_implies();
    while (at(Tok::Gt)) {
      take();
      lhs = policy_bin(BinOp::Priority, std::move(lhs), policy_implies());
    }
    return lhs;
  }

  Policy policy_implies() {
    Policy lhs = policy_k();
    while (at(Tok::Implies)) {
      take();
      lhs = policy_bin(BinOp::Implies, std::move(lhs), policy_k());
    }
    return lhs;
  }

  Policy policy_k() {
    Policy lhs = policy_t();
    while (auto op = k_operator()) {
      skip_operator(*op);
      lhs = policy_bin(*op, std::move(lhs), policy_t());
    }
    return lhs;
  }

  Policy policy_t() {
    Policy lhs = policy_unary();
    while (auto op = t_operator()) {
      skip_operator(*op);
      lhs = policy_bin(*op, std::move(lhs), policy_unary());
    }
    return lhs;
  }

  Policy policy_unary() {
    if (at(Tok::Bang)) {
      take();
      return policy_not(policy_unary());
    }
    if (at(Tok::LParen)) {
      take();
      Policy p = policy();
      expect(Tok::RParen);
      return p;
    }
    if (at(Tok::LBracket)) return Policy{aspect()};
    if (accept_word("true")) return policy_const(true);
    if (accept_word("false")) return policy_const(false);
    if (at(Tok::Ident)) {
      if (auto preset = policy_preset(peek().text)) {
        take();
        return *preset;
      }
    }
    fail({"'['", "'!'", "'('", "'true'", "'false'", "policy preset"});
  }

  Aspect aspect() {
    expect(Tok::LBracket);
    Aspect a;
    a.rec = rec_implies();
    expect_word("if");
    a.cut.subject = locref();
    expect(Tok::DoubleColon);
    a.cut.action = action();
    expect(Tok::Dot);
    a.cut.cont = cont_name();
    expect(Tok::Colon);
    a.cond = cond();
    expect(Tok::RBracket);
    return a;
  }

  std::string cont_name() {
    if (!at(Tok::Ident) || detail::is_reserved(peek().text)) fail({"process variable"});
    return take().text;
  }

  template <class Node, class Bin>
  static Node make_bin(BinOp op, Node lhs, Node rhs) {
    return Node{Bin{op, std::move(lhs), std::move(rhs)}};
  }

  Rec rec_implies() {
    Rec lhs = rec_k();
    while (at(Tok::Implies)) {
      take();
      lhs = make_bin<Rec, RecBin>(BinOp::Implies, std::move(lhs), rec_k());
    }
    return lhs;
  }

  Rec rec_k() {
    Rec lhs = rec_t();
    while (auto op = k_operator()) {
      skip_operator(*op);
      lhs = make_bin<Rec, RecBin>(*op, std::move(lhs), rec_t());
    }
    return lhs;
  }

  Rec rec_t() {
    Rec lhs = rec_unary();
    while (auto op = t_operator()) {
      skip_operator(*op);
      lhs = make_bin<Rec, RecBin>(*op, std::move(lhs), rec_unary());
    }
    return lhs;
  }

  Rec rec_unary() {
    if (at(Tok::Bang)) {
      take();
      return Rec{RecNot{rec_unary()}};
    }
    if (at(Tok::LParen)) {
      take();
      Rec r = rec_implies();
      expect(Tok::RParen);
      return r;
    }
    if (accept_word("true")) return Rec{RecConst{true}};
    if (accept_word("false")) return Rec{RecConst{false}};
    if (at_action()) {
      Action a = action();
      expect(Tok::OccursIn);
      return Rec{RecOccurs{std::move(a), cont_name()}};
    }
    if (!at_name()) fail({"'!'", "'('", "'true'", "'false'", "action", "term"});
    const Token first = take();
    if (at(Tok::Geq)) {
      take();
      if (!at_name()) fail({"level expression"});
      const Token second = take();
      return Rec{RecGeq{lev_from(first), lev_from(second)}};
    }
    if (at(Tok::Eq)) {
      take();
      LocRef lhs = loc_from(first);
      return Rec{RecEq{std::move(lhs), locref()}};
    }
    fail({"'='", "'>='"});
  }

  static LevExpr lev_from(const Token& t) {
    if (t.kind == Tok::Ident) {
      if (t.text == "Ss") return {LevKind::Ss, {}};
      if (t.text == "Cs") return {LevKind::Cs, {}};
      if (t.text == "Hs") return {LevKind::Hs, {}};
      if (t.text == "Ot") return {LevKind::Ot, {}};
      if (t.text == "Ht") return {LevKind::Ht, {}};
    }
    return {LevKind::Lit, t.text};
  }

  Cond cond() {
    Cond lhs = cond_unary();
    while (auto op = t_operator()) {
      skip_operator(*op);
      lhs = make_bin<Cond, CondBin>(*op, std::move(lhs), cond_unary());
    }
    return lhs;
  }

  Cond cond_unary() {
    if (at(Tok::Bang)) {
      take();
      return Cond{CondNot{cond_unary()}};
    }
    if (at(Tok::LParen)) {
      take();
      Cond c = cond();
      expect(Tok::RParen);
      return c;
    }
    if (accept_word("true")) return Cond{CondConst{true}};
    if (accept_word("false")) return Cond{CondConst{false}};
    if (at_word("test") && peek(1).kind == Tok::LParen) {
      take();
      CondPresent p;
      p.tuple = pattern_list();
      expect(Tok::At);
      p.target = locref();
      return Cond{std::move(p)};
    }
    if (at_action()) {
      Action a = action();
      expect(Tok::OccursIn);
      return Cond{CondOccurs{std::move(a), cont_name()}};
    }
    if (!at_name()) fail({"'!'", "'('", "'true'", "'false'", "'test'", "action", "term"});
    LocRef lhs = locref();
    expect(Tok::Eq);
    return Cond{CondEq{std::move(lhs), locref()}};
  }

  std::string file_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Net parse_scenario(std::string_view text, std::string_view file) {
  return Parser(text, std::string(file)).scenario();
}

Policy parse_policy(std::string_view text) {
  return Parser(text, "<policy>").standalone_policy();
}

Process parse_process(std::string_view text) {
  return Parser(text, "<process>").standalone_process();
}

}  // namespace akb
