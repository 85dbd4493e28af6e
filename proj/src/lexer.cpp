#include "focml/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace focml {

const char* describe(Tok t) {
  switch (t) {
    case Tok::Eof: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::String: return "string";
    case Tok::StepLabel: return "step label";
    case Tok::KwSpecies: return "'species'";
    case Tok::KwInherit: return "'inherit'";
    case Tok::KwRepresentation: return "'representation'";
    case Tok::KwSignature: return "'signature'";
    case Tok::KwLet: return "'let'";
    case Tok::KwRec: return "'rec'";
    case Tok::KwProperty: return "'property'";
    case Tok::KwTheorem: return "'theorem'";
    case Tok::KwProof: return "'proof'";
    case Tok::KwOf: return "'of'";
    case Tok::KwEnd: return "'end'";
    case Tok::KwCollection: return "'collection'";
    case Tok::KwImplement: return "'implement'";
    case Tok::KwType: return "'type'";
    case Tok::KwIs: return "'is'";
    case Tok::KwIn: return "'in'";
    case Tok::KwAll: return "'all'";
    case Tok::KwEx: return "'ex'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwMatch: return "'match'";
    case Tok::KwWith: return "'with'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwBy: return "'by'";
    case Tok::KwDefinition: return "'definition'";
    case Tok::KwStep: return "'step'";
    case Tok::KwHypothesis: return "'hypothesis'";
    case Tok::KwAssume: return "'assume'";
    case Tok::KwProve: return "'prove'";
    case Tok::KwQed: return "'qed'";
    case Tok::KwAdmitted: return "'admitted'";
    case Tok::KwSelf: return "'Self'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::SemiSemi: return "';;'";
    case Tok::Colon: return "':'";
    case Tok::Bar: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Underscore: return "'_'";
    case Tok::Equal: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Conj: return "'/\\'";
    case Tok::Disj: return "'\\/'";
    case Tok::Tilde: return "'~'";
    case Tok::TildeTilde: return "'~~'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::LtInt: return "'<0x'";
    case Tok::EqInt: return "'=0x'";
  }
  return "token";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"species", Tok::KwSpecies},       {"inherit", Tok::KwInherit},
      {"representation", Tok::KwRepresentation},
      {"signature", Tok::KwSignature},   {"let", Tok::KwLet},
      {"rec", Tok::KwRec},               {"property", Tok::KwProperty},
      {"theorem", Tok::KwTheorem},       {"proof", Tok::KwProof},
      {"of", Tok::KwOf},                 {"end", Tok::KwEnd},
      {"collection", Tok::KwCollection}, {"implement", Tok::KwImplement},
      {"type", Tok::KwType},             {"is", Tok::KwIs},
      {"in", Tok::KwIn},                 {"all", Tok::KwAll},
      {"ex", Tok::KwEx},                 {"if", Tok::KwIf},
      {"then", Tok::KwThen},             {"else", Tok::KwElse},
      {"match", Tok::KwMatch},           {"with", Tok::KwWith},
      {"true", Tok::KwTrue},             {"false", Tok::KwFalse},
      {"by", Tok::KwBy},                 {"definition", Tok::KwDefinition},
      {"step", Tok::KwStep},             {"hypothesis", Tok::KwHypothesis},
      {"assume", Tok::KwAssume},         {"prove", Tok::KwProve},
      {"qed", Tok::KwQed},               {"admitted", Tok::KwAdmitted},
      {"Self", Tok::KwSelf},
  };
  return table;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.loc = here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::Eof;
        out.push_back(t);
        return out;
      }
      scan(t);
      out.push_back(std::move(t));
    }
  }

 private:
  SourceLoc here() const { return SourceLoc{file_, line_, col_}; }

  char peek(std::size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }

  void bump(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(peek()))) bump();
      if (peek() == '(' && peek(1) == '*') {
        const SourceLoc start = here();
        int depth = 0;
        do {
          if (pos_ >= src_.size()) fail(ErrorKind::SyntaxError, start, "unterminated comment");
          if (peek() == '(' && peek(1) == '*') {
            ++depth;
            bump(2);
          } else if (peek() == '*' && peek(1) == ')') {
            --depth;
            bump(2);
          } else {
            bump();
          }
        } while (depth > 0);
        continue;
      }
      return;
    }
  }

  // `<digits>digits` with no spaces.
  bool at_step_label(std::size_t& len) const {
    std::size_t i = 1;
    if (!digit(peek(i))) return false;
    while (digit(peek(i))) ++i;
    if (peek(i) != '>') return false;
    ++i;
    if (!digit(peek(i))) return false;
    while (digit(peek(i))) ++i;
    len = i;
    return true;
  }

  void emit(Token& t, Tok kind, std::size_t len) {
    t.kind = kind;
    t.text = std::string(src_.substr(pos_, len));
    bump(len);
  }

  void scan(Token& t) {
    const char c = peek();
    if (ident_start(c)) {
      std::size_t len = 1;
      while (ident_char(peek(len))) ++len;
      const std::string_view word = src_.substr(pos_, len);
      if (word == "_") {
        emit(t, Tok::Underscore, len);
        return;
      }
      auto it = keywords().find(word);
      emit(t, it == keywords().end() ? Tok::Ident : it->second, len);
      return;
    }
    if (digit(c)) {
      std::size_t len = 1;
      while (digit(peek(len))) ++len;
      if (ident_start(peek(len)))
        fail(ErrorKind::SyntaxError, here(), "malformed number literal");
      emit(t, Tok::Int, len);
      return;
    }
    if (c == '"') {
      const SourceLoc start = here();
      bump();
      std::string value;
      for (;;) {
        if (pos_ >= src_.size() || peek() == '\n')
          fail(ErrorKind::SyntaxError, start, "unterminated string literal");
        if (peek() == '"') break;
        if (peek() == '\\') {
          bump();
          const char e = peek();
          value.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
          bump();
          continue;
        }
        value.push_back(peek());
        bump();
      }
      bump();
      t.kind = Tok::String;
      t.text = std::move(value);
      return;
    }
    switch (c) {
      case '(': emit(t, Tok::LParen, 1); return;
      case ')': emit(t, Tok::RParen, 1); return;
      case ',': emit(t, Tok::Comma, 1); return;
      case ';':
        if (peek(1) == ';') emit(t, Tok::SemiSemi, 2);
        else emit(t, Tok::Semi, 1);
        return;
      case ':': emit(t, Tok::Colon, 1); return;
      case '|':
        if (peek(1) == '|') emit(t, Tok::OrOr, 2);
        else emit(t, Tok::Bar, 1);
        return;
      case '!': emit(t, Tok::Bang, 1); return;
      case '+': emit(t, Tok::Plus, 1); return;
      case '*': emit(t, Tok::Star, 1); return;
      case '-':
        if (peek(1) == '>') emit(t, Tok::Arrow, 2);
        else emit(t, Tok::Minus, 1);
        return;
      case '=':
        if (peek(1) == '0' && peek(2) == 'x' && !ident_char(peek(3))) emit(t, Tok::EqInt, 3);
        else emit(t, Tok::Equal, 1);
        return;
      case '<': {
        std::size_t len = 0;
        if (at_step_label(len)) {
          emit(t, Tok::StepLabel, len);
          return;
        }
        if (peek(1) == '0' && peek(2) == 'x' && !ident_char(peek(3))) {
          emit(t, Tok::LtInt, 3);
          return;
        }
        if (peek(1) == '-' && peek(2) == '>') {
          emit(t, Tok::Iff, 3);
          return;
        }
        break;
      }
      case '/':
        if (peek(1) == '\\') {
          emit(t, Tok::Conj, 2);
          return;
        }
        break;
      case '\\':
        if (peek(1) == '/') {
          emit(t, Tok::Disj, 2);
          return;
        }
        break;
      case '~':
        if (peek(1) == '~') emit(t, Tok::TildeTilde, 2);
        else emit(t, Tok::Tilde, 1);
        return;
      case '&':
        if (peek(1) == '&') {
          emit(t, Tok::AndAnd, 2);
          return;
        }
        break;
      default:
        break;
    }
    fail(ErrorKind::SyntaxError, here(), std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace focml
