#include "forcing/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "forcing/errors.hpp"

namespace forcing {
namespace {

struct Token {
  enum class Kind { number, ident, plus, minus, star, caret, lparen, rparen, end };
  Kind kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(std::string_view text, SourcePos origin)
      : text_(text), line_(origin.line), col_(origin.column) {}

  Token next() {
    skip_space();
    SourcePos pos{line_, col_};
    if (at_end()) return {Token::Kind::end, "", pos};
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        num += advance();
      // rational literal `a/b` (a number token, not a division operator)
      if (!at_end() && peek() == '/') {
        std::size_t mark_line = line_, mark_col = col_;
        advance();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
          fail(Errc::parse, "expected digits after '/' in rational literal",
               SourcePos{static_cast<int>(mark_line), static_cast<int>(mark_col)});
        num += '/';
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          num += advance();
      }
      return {Token::Kind::number, num, pos};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_'))
        id += advance();
      return {Token::Kind::ident, id, pos};
    }
    advance();
    switch (c) {
      case '+':
        return {Token::Kind::plus, "+", pos};
      case '-':
        return {Token::Kind::minus, "-", pos};
      case '*':
        return {Token::Kind::star, "*", pos};
      case '^':
        return {Token::Kind::caret, "^", pos};
      case '(':
        return {Token::Kind::lparen, "(", pos};
      case ')':
        return {Token::Kind::rparen, ")", pos};
      default:
        fail(Errc::parse, std::string("unexpected character '") + c + "'", pos);
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      advance();
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_;
  int col_;
};

class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring, SourcePos origin)
      : lexer_(text, origin), ring_(std::move(ring)) {
    cur_ = lexer_.next();
  }

  Polynomial parse() {
    Polynomial p = expression();
    expect(Token::Kind::end, "end of expression");
    return p;
  }

 private:
  Polynomial expression() {
    bool negate = accept(Token::Kind::minus);
    if (!negate) accept(Token::Kind::plus);
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (cur_.kind == Token::Kind::plus || cur_.kind == Token::Kind::minus) {
      bool minus = cur_.kind == Token::Kind::minus;
      advance();
      Polynomial t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept(Token::Kind::star)) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept(Token::Kind::caret)) {
      Token t = cur_;
      expect(Token::Kind::number, "exponent");
      if (t.text.find('/') != std::string::npos)
        fail(Errc::parse, "exponent must be a non-negative integer", t.pos);
      mpz_class e(t.text);
      if (e > 4096)
        fail(Errc::parse, "exponent " + t.text + " is too large", t.pos);
      return base.pow(e.get_ui());
    }
    return base;
  }

  Polynomial primary() {
    Token t = cur_;
    switch (t.kind) {
      case Token::Kind::number: {
        advance();
        Coeff c = coefficient_literal(t);
        return Polynomial::constant(ring_, c);
      }
      case Token::Kind::ident: {
        advance();
        auto idx = ring_->find_variable(t.text);
        if (!idx)
          fail(Errc::parse, "unknown variable '" + t.text + "'", t.pos);
        return Polynomial::variable(ring_, *idx);
      }
      case Token::Kind::lparen: {
        advance();
        Polynomial p = expression();
        expect(Token::Kind::rparen, "')'");
        return p;
      }
      default:
        fail(Errc::parse, "expected a number, variable or '('", t.pos);
    }
  }

  Coeff coefficient_literal(const Token& t) {
    auto slash = t.text.find('/');
    if (slash == std::string::npos) return Coeff(mpz_class(t.text));
    mpz_class num(t.text.substr(0, slash));
    mpz_class den(t.text.substr(slash + 1));
    if (den == 0) fail(Errc::parse, "zero denominator", t.pos);
    Coeff c(num, den);
    c.canonicalize();
    try {
      return ring_->canonical(c);
    } catch (const Error& e) {
      fail(Errc::parse, e.what(), t.pos);
    }
  }

  bool accept(Token::Kind kind) {
    if (cur_.kind != kind) return false;
    advance();
    return true;
  }

  void expect(Token::Kind kind, const std::string& what) {
    if (cur_.kind != kind)
      fail(Errc::parse, "expected " + what, cur_.pos);
    if (kind != Token::Kind::end) advance();
  }

  void advance() { cur_ = lexer_.next(); }

  Lexer lexer_;
  RingPtr ring_;
  Token cur_;
};

std::vector<std::string> split_names(std::string_view text, SourcePos pos) {
  std::vector<std::string> names;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      names.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  names.push_back(current);
  for (const auto& n : names) {
    if (n.empty()) fail(Errc::parse, "empty variable name", pos);
    if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_')
      fail(Errc::parse, "invalid variable name '" + n + "'", pos);
    for (char c : n)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        fail(Errc::parse, "invalid variable name '" + n + "'", pos);
  }
  return names;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

RingPtr parse_ring(std::string_view text) {
  std::string_view s = trim(text);
  SourcePos pos{1, 1};
  auto take_bracket_list = [&](std::string_view& rest) -> std::vector<std::string> {
    if (rest.empty() || rest.front() != '[')
      fail(Errc::parse, "expected '[' starting a variable list", pos);
    auto close = rest.find(']');
    if (close == std::string_view::npos)
      fail(Errc::parse, "unterminated variable list", pos);
    std::string_view inner = rest.substr(1, close - 1);
    rest.remove_prefix(close + 1);
    if (trim(inner).empty()) return {};
    return split_names(inner, pos);
  };

  Domain domain;
  mpz_class p(0);
  std::string_view rest = s;
  if (rest.rfind("Fp(", 0) == 0) {
    auto close = rest.find(')');
    if (close == std::string_view::npos)
      fail(Errc::parse, "unterminated modulus", pos);
    std::string digits(trim(rest.substr(3, close - 3)));
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      fail(Errc::parse, "modulus must be a positive integer", pos);
    p = mpz_class(digits);
    if (!is_probable_prime(p))
      fail(Errc::parse, "modulus " + digits + " is not prime", pos);
    domain = Domain::prime_field;
    rest.remove_prefix(close + 1);
  } else if (rest.rfind("Q", 0) == 0) {
    domain = Domain::rationals;
    rest.remove_prefix(1);
  } else if (rest.rfind("Z", 0) == 0) {
    domain = Domain::integers;
    rest.remove_prefix(1);
  } else {
    fail(Errc::parse, "expected 'Q', 'Fp(<p>)' or 'Z'", pos);
  }

  std::vector<std::string> base_vars;
  if (domain != Domain::integers) base_vars = take_bracket_list(rest);

  std::vector<std::string> forcing_vars;
  rest = trim(rest);
  if (!rest.empty()) {
    if (rest.front() != ';')
      fail(Errc::parse, "expected ';[T-vars]' suffix", pos);
    rest.remove_prefix(1);
    rest = trim(rest);
    forcing_vars = take_bracket_list(rest);
    if (!trim(rest).empty())
      fail(Errc::parse, "trailing input after ring declaration", pos);
  }

  try {
    switch (domain) {
      case Domain::rationals:
        return Ring::rationals(std::move(base_vars), std::move(forcing_vars));
      case Domain::prime_field:
        return Ring::prime_field(p, std::move(base_vars),
                                 std::move(forcing_vars));
      case Domain::integers:
        return Ring::integers(std::move(forcing_vars));
    }
  } catch (const Error& e) {
    fail(Errc::parse, e.what(), pos);
  }
  fail(Errc::parse, "unreachable", pos);
}

Polynomial parse_poly(std::string_view text, const RingPtr& ring) {
  return parse_poly_at(text, ring, SourcePos{1, 1});
}

Polynomial parse_poly_at(std::string_view text, const RingPtr& ring,
                         SourcePos origin) {
  if (!ring) fail(Errc::invalid_argument, "polynomial parse requires a ring");
  return PolyParser(text, ring, origin).parse();
}

PointSpec parse_point(std::string_view text, const RingPtr& ring) {
  PointSpec point;
  std::string_view s = trim(text);
  point.text = std::string(s);
  if (s == "generic") {
    point.generic = true;
    return point;
  }
  std::set<std::size_t> assigned;
  std::size_t start = 0;
  std::string str(s);
  while (start <= str.size()) {
    auto comma = str.find(',', start);
    std::string item = str.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    std::string_view entry = trim(item);
    if (entry.empty())
      fail(Errc::parse, "empty point coordinate");
    auto eq = entry.find('=');
    if (eq == std::string_view::npos)
      fail(Errc::parse, "point coordinates use 'var=value'");
    std::string name(trim(entry.substr(0, eq)));
    auto idx = ring->find_variable(name);
    if (!idx || ring->is_forcing_variable(*idx))
      fail(Errc::parse, "unknown base variable '" + name + "' in point");
    std::string value(trim(entry.substr(eq + 1)));
    bool negative = false;
    if (!value.empty() && (value[0] == '-' || value[0] == '+')) {
      negative = value[0] == '-';
      value = value.substr(1);
    }
    auto slash = value.find('/');
    Coeff c;
    try {
      if (slash == std::string::npos) {
        c = Coeff(mpz_class(value));
      } else {
        c = Coeff(mpz_class(value.substr(0, slash)),
                  mpz_class(value.substr(slash + 1)));
        c.canonicalize();
      }
    } catch (const std::invalid_argument&) {
      fail(Errc::parse, "invalid coordinate value '" + value + "'");
    }
    if (negative) c = -c;
    c = ring->canonical(c);
    if (!assigned.insert(*idx).second)
      fail(Errc::parse, "variable '" + name + "' assigned twice");
    point.coords.emplace_back(*idx, c);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (std::size_t i = 0; i < ring->base_count(); ++i)
    if (!assigned.count(i))
      fail(Errc::parse,
           "point does not assign base variable '" + ring->variable(i) + "'");
  std::sort(point.coords.begin(), point.coords.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return point;
}

// ---------------------------------------------------------------------------
// job files
// ---------------------------------------------------------------------------

namespace {

struct RawLine {
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<RawLine> split_job_lines(std::string_view text) {
  std::vector<RawLine> out;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos
                                            : nl - start);
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      auto colon = line.find(':');
      if (colon == std::string_view::npos)
        fail(Errc::parse, "expected 'key: value'", SourcePos{lineno, 1});
      RawLine raw;
      raw.key = std::string(trim(line.substr(0, colon)));
      raw.value = std::string(trim(line.substr(colon + 1)));
      raw.line = lineno;
      out.push_back(std::move(raw));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value, int line) {
  std::string_view s = trim(value);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail(Errc::parse, "expected a bracketed list", SourcePos{line, 1});
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> items;
  if (trim(s).empty()) return items;
  std::string current;
  for (char c : s) {
    if (c == ',') {
      items.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  items.emplace_back(trim(current));
  return items;
}

std::vector<std::string> split_nested_list(const std::string& value, int line) {
  std::string_view s = trim(value);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail(Errc::parse, "expected a bracketed list of rows", SourcePos{line, 1});
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> rows;
  int depth = 0;
  std::string current;
  for (char c : s) {
    if (c == '[') {
      ++depth;
      current += c;
    } else if (c == ']') {
      --depth;
      if (depth < 0)
        fail(Errc::parse, "unbalanced brackets in matrix", SourcePos{line, 1});
      current += c;
    } else if (c == ',' && depth == 0) {
      rows.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (depth != 0)
    fail(Errc::parse, "unbalanced brackets in matrix", SourcePos{line, 1});
  if (!trim(current).empty()) rows.emplace_back(trim(current));
  return rows;
}

void require_base_only(const Polynomial& p, const std::string& what, int line) {
  const Ring& ring = p.ring();
  if (p.uses_any_variable(ring.base_count(), ring.arity()))
    fail(Errc::validation,
         what + " must not involve forcing variables: " + p.to_string(),
         SourcePos{line, 1});
}

}  // namespace

JobSpec parse_job(std::string_view text) {
  auto lines = split_job_lines(text);
  std::map<std::string, RawLine> byKey;
  for (auto& raw : lines) {
    if (!byKey.emplace(raw.key, raw).second)
      fail(Errc::parse, "duplicate key '" + raw.key + "'",
           SourcePos{raw.line, 1});
  }
  static const std::set<std::string> known = {
      "ring", "ideal",  "f",           "mode",   "local_at",
      "point", "point_range", "matrix", "vector", "closure",
      "trusted_factors"};
  for (const auto& [key, raw] : byKey)
    if (!known.count(key))
      fail(Errc::parse, "unknown key '" + key + "'", SourcePos{raw.line, 1});

  auto get = [&](const std::string& key) -> const RawLine* {
    auto it = byKey.find(key);
    return it == byKey.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const RawLine& {
    const RawLine* raw = get(key);
    if (!raw) fail(Errc::validation, "missing required key '" + key + "'");
    return *raw;
  };

  JobSpec job;
  const RawLine& ring_line = require("ring");
  try {
    job.ring = parse_ring(ring_line.value);
  } catch (const Error& e) {
    fail(Errc::parse, std::string("ring: ") + e.what(),
         SourcePos{ring_line.line, 1});
  }

  const RawLine& mode_line = require("mode");
  if (mode_line.value == "global")
    job.mode = JobMode::global;
  else if (mode_line.value == "local")
    job.mode = JobMode::local;
  else if (mode_line.value == "fiber")
    job.mode = JobMode::fiber;
  else if (mode_line.value == "closure")
    job.mode = JobMode::closure;
  else
    fail(Errc::validation, "unknown mode '" + mode_line.value + "'",
         SourcePos{mode_line.line, 1});

  auto parse_poly_list = [&](const RawLine& raw,
                             const std::string& what) -> std::vector<Polynomial> {
    std::vector<Polynomial> out;
    for (const auto& item : split_list(raw.value, raw.line)) {
      Polynomial p = parse_poly_at(item, job.ring, SourcePos{raw.line, 1});
      require_base_only(p, what, raw.line);
      out.push_back(std::move(p));
    }
    return out;
  };

  if (const RawLine* raw = get("ideal")) job.ideal = parse_poly_list(*raw, "ideal generator");
  if (const RawLine* raw = get("f")) {
    job.f = parse_poly_at(raw->value, job.ring, SourcePos{raw->line, 1});
    require_base_only(job.f, "f", raw->line);
  } else {
    job.f = Polynomial::zero(job.ring);
  }
  if (const RawLine* raw = get("local_at"))
    job.local_at = parse_poly_list(*raw, "local_at generator");
  if (const RawLine* raw = get("closure")) {
    if (raw->value == "ideal")
      job.closure = ClosureKind::ideal;
    else if (raw->value == "radical")
      job.closure = ClosureKind::radical;
    else if (raw->value == "integral")
      job.closure = ClosureKind::integral;
    else
      fail(Errc::validation, "unknown closure kind '" + raw->value + "'",
           SourcePos{raw->line, 1});
  }
  if (const RawLine* raw = get("matrix")) {
    std::vector<std::vector<Polynomial>> rows;
    for (const auto& row_text : split_nested_list(raw->value, raw->line)) {
      std::vector<Polynomial> row;
      for (const auto& item : split_list(row_text, raw->line)) {
        Polynomial p = parse_poly_at(item, job.ring, SourcePos{raw->line, 1});
        require_base_only(p, "matrix entry", raw->line);
        row.push_back(std::move(p));
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty())
      fail(Errc::validation, "matrix must have at least one row",
           SourcePos{raw->line, 1});
    job.matrix = std::move(rows);
  }
  if (const RawLine* raw = get("vector"))
    job.rhs = parse_poly_list(*raw, "vector entry");
  if (const RawLine* raw = get("point"))
    job.point = parse_point(raw->value, job.ring);
  if (const RawLine* raw = get("point_range")) {
    auto dots = raw->value.find("..");
    if (dots == std::string::npos)
      fail(Errc::parse, "point_range uses 'a..b'", SourcePos{raw->line, 1});
    try {
      long lo = std::stol(raw->value.substr(0, dots));
      long hi = std::stol(raw->value.substr(dots + 2));
      if (lo > hi) std::swap(lo, hi);
      job.point_range = {lo, hi};
    } catch (const std::exception&) {
      fail(Errc::parse, "point_range uses 'a..b'", SourcePos{raw->line, 1});
    }
  }
  if (const RawLine* raw = get("trusted_factors"))
    job.trusted_factors = parse_poly_list(*raw, "trusted factor");

  // --- mode/field consistency ---
  const bool needs_ideal = job.mode != JobMode::fiber;
  if (needs_ideal && job.ideal.empty())
    fail(Errc::validation,
         "ideal must be nonempty in " + to_string(job.mode) + " mode");
  if ((job.mode == JobMode::local) != !job.local_at.empty())
    fail(Errc::validation, "local_at must be present exactly in local mode");
  if (job.mode == JobMode::closure && !job.closure)
    fail(Errc::validation, "closure mode requires a closure kind");
  if (job.mode != JobMode::closure && job.closure)
    fail(Errc::validation, "closure kind is only valid in closure mode");
  if (job.matrix && job.mode != JobMode::fiber)
    fail(Errc::validation, "matrix form is supported only in fiber mode");
  if (!job.rhs.empty() && !job.matrix)
    fail(Errc::validation, "vector requires a matrix");
  if ((job.point || job.point_range) && job.mode != JobMode::fiber)
    fail(Errc::validation, "points are only valid in fiber mode");

  if (job.mode == JobMode::global || job.mode == JobMode::local) {
    if (job.ring->forcing_count() == 0)
      fail(Errc::validation, "ring declares no forcing variables");
    if (job.ideal.size() != job.ring->forcing_count())
      fail(Errc::validation,
           "ideal has " + std::to_string(job.ideal.size()) +
               " generators but the ring declares " +
               std::to_string(job.ring->forcing_count()) +
               " forcing variables");
    if (!get("f")) fail(Errc::validation, "missing required key 'f'");
  }
  if (job.mode == JobMode::fiber) {
    if (job.ring->forcing_count() == 0)
      fail(Errc::validation, "ring declares no forcing variables");
    if (job.matrix && !job.ideal.empty())
      fail(Errc::validation, "fiber mode takes either a matrix or an ideal row");
    if (job.point && job.point_range)
      fail(Errc::validation, "give either a point or a point_range");
    if (!job.matrix) {
      if (job.ideal.empty())
        fail(Errc::validation, "fiber mode needs a matrix or an ideal row");
      job.matrix = std::vector<std::vector<Polynomial>>{job.ideal};
      job.rhs = {job.f};
    }
    for (const auto& row : *job.matrix)
      if (row.size() != job.ring->forcing_count())
        fail(Errc::validation,
             "matrix rows must have one entry per forcing variable");
    if (job.rhs.empty())
      job.rhs.assign(job.matrix->size(), Polynomial::zero(job.ring));
    if (job.rhs.size() != job.matrix->size())
      fail(Errc::validation, "vector length must match the matrix row count");
    if (!job.point && !job.point_range)
      fail(Errc::validation,
           "fiber mode needs 'point', 'point_range' or 'point: generic'");
  }
  return job;
}

std::string to_string(JobMode mode) {
  switch (mode) {
    case JobMode::global:
      return "global";
    case JobMode::local:
      return "local";
    case JobMode::fiber:
      return "fiber";
    case JobMode::closure:
      return "closure";
  }
  return "?";
}

std::string to_string(ClosureKind kind) {
  switch (kind) {
    case ClosureKind::ideal:
      return "ideal";
    case ClosureKind::radical:
      return "radical";
    case ClosureKind::integral:
      return "integral";
  }
  return "?";
}

}  // namespace forcing
