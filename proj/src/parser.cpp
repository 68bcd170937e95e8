#include "exactsos/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace exactsos {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*':
        if (i + 1 < s.size() && s[i + 1] == '*') {
          out.push_back({Tok::Caret, "**", i});
          i += 2;
          continue;
        }
        k = Tok::Star;
        break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw Error("unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
  Integer num(whole.empty() ? "0" : whole), den = 1;
  for (char ch : frac) {
    num = num * 10 + (ch - '0');
    den *= 10;
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Splits an unknown identifier such as "xyz" into known names (longest
/// match first). Returns false when no split exists.
bool split_identifier(const std::string& id, const std::vector<std::string>& known, std::vector<std::string>& parts) {
  if (id.empty()) return true;
  std::vector<std::string> sorted = known;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& k : sorted) {
    if (k.empty() || id.compare(0, k.size(), k) != 0) continue;
    parts.push_back(k);
    if (split_identifier(id.substr(k.size()), known, parts)) return true;
    parts.pop_back();
  }
  return false;
}

std::vector<Token> split_juxtaposed(std::vector<Token> toks, const VarList& vars, const FieldPtr& field) {
  std::vector<std::string> known = vars ? *vars : std::vector<std::string>{};
  if (field) known.push_back(field->generator());
  std::vector<Token> out;
  for (auto& t : toks) {
    std::vector<std::string> parts;
    if (t.kind == Tok::Ident && std::find(known.begin(), known.end(), t.text) == known.end() &&
        split_identifier(t.text, known, parts)) {
      size_t offset = 0;
      for (auto& p : parts) {
        out.push_back({Tok::Ident, p, t.pos + offset});
        offset += p.size();
      }
      continue;
    }
    out.push_back(std::move(t));
  }
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, const VarList& vars, const FieldPtr& field)
      : toks_(split_juxtaposed(tokenize(text), vars, field)), vars_(vars), field_(field) {}

  NfPoly parse() {
    if (peek().kind == Tok::End) throw Error("empty expression");
    NfPoly v = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse error at position " + std::to_string(peek().pos) + ": " + msg);
  }

  NfPoly expr() {
    NfPoly v = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      NfPoly t = term();
      if (minus) v -= t;
      else v += t;
    }
    return v;
  }

  NfPoly term() {
    NfPoly v = factor();
    while (true) {
      const Tok k = peek().kind;
      if (k == Tok::Star) {
        next();
        v = v * factor();
      } else if (k == Tok::Slash) {
        next();
        NfPoly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero expression");
        v = d.constant_term().inverse() * v;
      } else if (k == Tok::Number || k == Tok::Ident || k == Tok::LParen) {
        v = v * factor();
      } else {
        return v;
      }
    }
  }

  NfPoly factor() {
    if (peek().kind == Tok::Minus) {
      next();
      return -factor();
    }
    if (peek().kind == Tok::Plus) {
      next();
      return factor();
    }
    NfPoly base = primary();
    while (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos) fail("exponent must be a non-negative integer");
      const Integer e(next().text);
      if (e > 10000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  NfPoly primary() {
    const Token t = next();
    switch (t.kind) {
      case Tok::Number:
        return NfPoly::constant(vars_, AlgebraicNumber(parse_number(t.text)));
      case Tok::Ident: {
        if (field_ && t.text == field_->generator()) return NfPoly::constant(vars_, AlgebraicNumber::generator(field_));
        const auto& vs = *vars_;
        auto it = std::find(vs.begin(), vs.end(), t.text);
        if (it == vs.end()) {
          --pos_;
          fail("unknown identifier '" + t.text + "'");
        }
        return NfPoly::variable(vars_, static_cast<size_t>(it - vs.begin()));
      }
      case Tok::LParen: {
        NfPoly v = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return v;
      }
      default:
        --pos_;
        fail(t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  VarList vars_;
  FieldPtr field_;
};

}  // namespace

std::vector<std::string> identifiers(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) {
    if (t.kind == Tok::Ident && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
  }
  return out;
}

VarList infer_variables(const std::vector<std::string>& texts, const std::vector<std::string>& exclude) {
  std::set<std::string> names;
  for (const auto& t : texts) {
    for (auto& id : identifiers(t)) {
      // Without a declared variable list, "x2yz" reads as x2 * y * z.
      for (size_t i = 0; i < id.size();) {
        size_t j = i + 1;
        while (j < id.size() && std::isdigit(static_cast<unsigned char>(id[j]))) ++j;
        const std::string name = id.substr(i, j - i);
        if (std::find(exclude.begin(), exclude.end(), name) == exclude.end()) names.insert(name);
        i = j;
      }
    }
  }
  return make_vars(std::vector<std::string>(names.begin(), names.end()));
}

NfPoly parse_nf_polynomial(std::string_view text, const VarList& vars, const FieldPtr& field) {
  return ExprParser(text, vars, field).parse();
}

QPoly parse_polynomial(std::string_view text, const VarList& vars) {
  const NfPoly p = parse_nf_polynomial(text, vars, nullptr);
  return p.map_coefficients([](const AlgebraicNumber& c) { return c.to_rational(); });
}

UniPoly parse_univariate(std::string_view text, const std::string& var) {
  const QPoly p = parse_polynomial(text, make_vars({var}));
  std::vector<Rational> c(static_cast<size_t>(std::max(p.degree(), 0)) + 1, Rational(0));
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  return UniPoly(std::move(c));
}

AlgebraicNumber parse_algebraic(std::string_view text, const FieldPtr& field) {
  const NfPoly p = parse_nf_polynomial(text, make_vars({}), field);
  if (p.is_zero()) return field ? AlgebraicNumber(field, {Rational(0)}) : AlgebraicNumber(0);
  return p.constant_term();
}

VarList parse_variable_list(std::string_view text) {
  std::vector<std::string> names;
  for (auto& n : split(text, ',')) {
    if (n.empty() || !ident_start(n[0]) || !std::all_of(n.begin(), n.end(), ident_char)) {
      throw Error("invalid variable name '" + n + "'");
    }
    if (std::find(names.begin(), names.end(), n) != names.end()) throw Error("duplicate variable " + n);
    names.push_back(n);
  }
  return make_vars(std::move(names));
}

std::string strip_comments(std::string_view text) {
  std::string out;
  for (const auto& line : split(text, '\n')) {
    const auto hash = line.find('#');
    out += line.substr(0, hash);
    out += ' ';
  }
  return out;
}

FieldPtr parse_field_header(std::string_view line) {
  const std::string t = trim(line);
  if (t.rfind("field:", 0) != 0) return nullptr;
  std::string gen = "a";
  std::optional<UniPoly> minpoly;
  std::optional<size_t> root;
  // "field: a, minpoly: Z^3-2[, root: k]"
  for (const auto& part : split(std::string_view(t).substr(6), ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) {
      if (!part.empty()) gen = part;
      continue;
    }
    const std::string key = trim(part.substr(0, colon)), value = trim(part.substr(colon + 1));
    if (key == "minpoly") minpoly = parse_univariate(value, "Z");
    else if (key == "root") root = static_cast<size_t>(std::stoul(value));
    else throw Error("unknown field header key '" + key + "'");
  }
  if (!minpoly) throw Error("field header without minpoly");
  if (!root && minpoly->degree() >= 1 && real_root_count(*minpoly) >= 1) root = 0;
  return NumberField::make(*minpoly, gen, root);
}

PolynomialDocument parse_polynomial_document(std::string_view text, const VarList& vars) {
  PolynomialDocument doc;
  std::string body;
  VarList header_vars;
  for (const auto& raw : split(text, '\n')) {
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("field:", 0) == 0) {
      if (doc.field) throw Error("duplicate field header");
      doc.field = parse_field_header(line);
      continue;
    }
    if (line.rfind("vars:", 0) == 0) {
      if (header_vars) throw Error("duplicate vars header");
      header_vars = parse_variable_list(line.substr(5));
      continue;
    }
    body += line + " ";
  }
  body = trim(body);
  if (!body.empty() && body.back() == ';') body.pop_back();
  if (body.empty()) throw Error("no polynomial found");
  VarList vs = vars ? vars : header_vars;
  if (!vs) {
    std::vector<std::string> exclude;
    if (doc.field) exclude.push_back(doc.field->generator());
    vs = infer_variables({body}, exclude);
  }
  doc.poly = parse_nf_polynomial(body, vs, doc.field);
  return doc;
}

}  // namespace exactsos
