#include "mrsc/lang.hpp"

#include <cctype>
#include <sstream>

namespace mrsc {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

WellFormednessError::WellFormednessError(const std::string& msg, std::string subject)
    : std::runtime_error(msg), subject_(std::move(subject)) {}

namespace {

enum class Tok { LowerId, UpperId, LParen, RParen, Comma, Equals, Semi, Colon, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::LowerId: return "identifier";
    case Tok::UpperId: return "constructor name";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    int l = line, k = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        advance();
      Tok t = std::isupper(static_cast<unsigned char>(c)) ? Tok::UpperId : Tok::LowerId;
      out.push_back({t, std::string(src.substr(start, i - start)), l, k});
      continue;
    }
    Tok t;
    switch (c) {
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      case '=': t = Tok::Equals; break;
      case ';': t = Tok::Semi; break;
      case ':': t = Tok::Colon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, k);
    }
    out.push_back({t, std::string(1, c), l, k});
    advance();
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// One `name(params) = body;` line before clauses are grouped into defs.
struct RawHead {
  std::string name;
  std::optional<Pattern> pattern;
  std::vector<std::string> params;
  Exp body;
  int line;
  int column;
};

class Parser {
public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  ParsedSource parseSource() {
    std::vector<RawHead> heads;
    std::optional<Exp> target;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::LowerId && peek().text == "expression" &&
          peek(1).kind == Tok::Colon) {
        pos_ += 2;
        target = parseExp();
        if (peek().kind == Tok::Semi) ++pos_;
        expect(Tok::End);
        break;
      }
      heads.push_back(parseDefinition());
    }
    return {assemble(std::move(heads)), std::move(target)};
  }

  Exp parseStandaloneExp() {
    Exp e = parseExp();
    expect(Tok::End);
    return e;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      std::ostringstream msg;
      msg << "expected " << describe(kind) << ", found " << describe(t.kind);
      if (!t.text.empty()) msg << " '" << t.text << "'";
      throw ParseError(msg.str(), t.line, t.column);
    }
    ++pos_;
    return t;
  }

  std::vector<Exp> parseArgs() {
    std::vector<Exp> args;
    expect(Tok::LParen);
    if (peek().kind != Tok::RParen) {
      args.push_back(parseExp());
      while (peek().kind == Tok::Comma) {
        ++pos_;
        args.push_back(parseExp());
      }
    }
    expect(Tok::RParen);
    return args;
  }

  Exp parseExp() {
    const Token& t = peek();
    if (t.kind == Tok::UpperId) {
      ++pos_;
      std::vector<Exp> args;
      if (peek().kind == Tok::LParen) args = parseArgs();
      return Exp::con(t.text, std::move(args));
    }
    if (t.kind == Tok::LowerId) {
      ++pos_;
      if (peek().kind == Tok::LParen) return Exp::fun(t.text, parseArgs());
      return Exp::var(t.text);
    }
    expect(Tok::LowerId);  // throws
    return {};
  }

  RawHead parseDefinition() {
    const Token& nameTok = peek();
    if (nameTok.kind == Tok::UpperId)
      throw WellFormednessError("function name '" + nameTok.text +
                                    "' must start with a lowercase letter",
                                nameTok.text);
    expect(Tok::LowerId);
    RawHead head{nameTok.text, std::nullopt, {}, {}, nameTok.line, nameTok.column};
    expect(Tok::LParen);
    bool first = true;
    while (peek().kind != Tok::RParen) {
      if (!first) expect(Tok::Comma);
      const Token& p = peek();
      if (p.kind == Tok::UpperId) {
        if (!first)
          throw WellFormednessError("only the first parameter of '" + head.name +
                                        "' may be a pattern",
                                    head.name);
        ++pos_;
        Pattern pat{p.text, {}};
        if (peek().kind == Tok::LParen) {
          ++pos_;
          while (peek().kind != Tok::RParen) {
            if (!pat.vars.empty()) expect(Tok::Comma);
            if (peek().kind == Tok::UpperId || peek(1).kind == Tok::LParen)
              throw WellFormednessError("nested pattern in '" + head.name + "'", head.name);
            pat.vars.push_back(expect(Tok::LowerId).text);
          }
          expect(Tok::RParen);
        }
        head.pattern = std::move(pat);
      } else {
        head.params.push_back(expect(Tok::LowerId).text);
      }
      first = false;
    }
    expect(Tok::RParen);
    expect(Tok::Equals);
    head.body = parseExp();
    expect(Tok::Semi);
    return head;
  }

  static Program assemble(std::vector<RawHead> heads) {
    std::vector<Def> defs;
    std::unordered_map<std::string, std::size_t> where;
    for (auto& h : heads) {
      auto it = where.find(h.name);
      if (it == where.end()) {
        where.emplace(h.name, defs.size());
        if (h.pattern)
          defs.push_back(MatchDef{h.name, {Clause{std::move(*h.pattern), std::move(h.params),
                                                  std::move(h.body)}}});
        else
          defs.push_back(FunDef{h.name, std::move(h.params), std::move(h.body)});
        continue;
      }
      auto* m = std::get_if<MatchDef>(&defs[it->second]);
      if (!m || !h.pattern)
        throw WellFormednessError("function '" + h.name +
                                      "' is defined more than once or mixes ordinary and "
                                      "pattern-matching definitions",
                                  h.name);
      m->clauses.push_back(Clause{std::move(*h.pattern), std::move(h.params), std::move(h.body)});
    }
    return Program(std::move(defs));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedSource parseProgram(std::string_view text) {
  Parser parser(text);
  ParsedSource src = parser.parseSource();
  checkProgram(src.program, src.target ? &*src.target : nullptr);
  return src;
}

Exp parseExp(std::string_view text) { return Parser(text).parseStandaloneExp(); }

}  // namespace mrsc
