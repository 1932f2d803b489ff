#include "rosen/io.hpp"

#include <cctype>
#include <limits>

#include "rosen/error.hpp"

namespace rosen::io {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(what + " (found " + found + ")", pos_);
  }

  std::string integer_token() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string token(text_.substr(start, pos_ - start));
    if (token[0] == '+') token.erase(0, 1);
    return token;
  }

  long coefficient() {
    const std::size_t start = (skip_ws(), pos_);
    const Integer n(integer_token());
    if (!n.fits_slong_p()) throw ParseError("coefficient out of range", start);
    return n.get_si();
  }

  Rational rational() {
    Integer num(integer_token());
    Integer den(1);
    if (accept('/')) {
      const std::size_t at = pos_;
      den = Integer(integer_token());
      if (den <= 0) throw ParseError("denominator must be positive", at);
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // Comma-separated coefficients up to (not including) `close`.
  cf::Coefficients coefficient_list(char close) {
    cf::Coefficients out;
    if (peek() == close) return out;
    do {
      out.push_back(coefficient());
    } while (accept(','));
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Context context_at(Cursor& in) {
  in.accept("q=");
  if (in.accept("inf") || in.accept("\xE2\x88\x9E")) return make_theta_context();
  const std::size_t at = in.pos();
  const Integer q(in.integer_token());
  if (!q.fits_sint_p()) throw ParseError("q out of range", at);
  try {
    return make_context(static_cast<int>(q.get_si()));
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what(), at);
  }
}

Context leading_context(Cursor& in, const Context& fallback) {
  if (in.peek() == '[') {
    if (!fallback) in.fail("missing \"q=...\" prefix");
    return fallback;
  }
  return context_at(in);
}

std::string rational_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(const std::string& s) {
  Cursor in(s);
  Rational r = in.rational();
  in.expect_end();
  return r;
}

// Largest s with s^2 | n; returns (s, n / s^2).
std::pair<Integer, Integer> square_part(Integer n) {
  Integer s = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
  }
  return {s, n};
}

}  // namespace

Context parse_context(std::string_view text) {
  Cursor in(text);
  Context ctx = context_at(in);
  in.expect_end();
  return ctx;
}

std::variant<cf::RosenCF, cf::InfiniteCF> parse_cf(std::string_view text, const Context& fallback) {
  Cursor in(text);
  const Context ctx = leading_context(in, fallback);
  in.expect('[');
  const std::size_t body = in.pos();
  if (in.accept('(')) {
    cf::Coefficients period = in.coefficient_list(')');
    in.expect(')');
    in.expect(']');
    in.expect_end();
    if (period.empty()) throw ParseError("empty period", body);
    return cf::InfiniteCF(ctx, {}, std::move(period));
  }
  cf::Coefficients head = in.coefficient_list(']');
  if (in.accept(';')) {
    in.expect('(');
    const std::size_t at = in.pos();
    cf::Coefficients period = in.coefficient_list(')');
    in.expect(')');
    in.expect(']');
    in.expect_end();
    if (period.empty()) throw ParseError("empty period", at);
    return cf::InfiniteCF(ctx, std::move(head), std::move(period));
  }
  in.expect(']');
  in.expect_end();
  if (head.empty()) throw ParseError("a continued fraction needs at least one coefficient", body);
  return cf::RosenCF(ctx, std::move(head));
}

cf::RosenCF parse_finite_cf(std::string_view text, const Context& fallback) {
  auto parsed = parse_cf(text, fallback);
  if (auto* f = std::get_if<cf::RosenCF>(&parsed)) return *f;
  throw ParseError("expected a finite continued fraction", 0);
}

cf::InfiniteCF parse_infinite_cf(std::string_view text, const Context& fallback) {
  auto parsed = parse_cf(text, fallback);
  if (auto* f = std::get_if<cf::InfiniteCF>(&parsed)) return *f;
  throw ParseError("expected a periodic continued fraction such as [2;(2)]", 0);
}

BoundaryPoint parse_point(const Context& ctx, std::string_view text) {
  Cursor in(text);
  if (in.accept("inf")) {
    in.expect_end();
    return BoundaryPoint::infinity(ctx);
  }
  if (in.peek() == '[') {
    return cf::evaluate(parse_finite_cf(text, ctx));
  }
  if (in.accept('{')) {
    std::vector<Rational> coeffs;
    if (in.peek() != '}') {
      do {
        coeffs.push_back(in.rational());
      } while (in.accept(','));
    }
    in.expect('}');
    in.expect_end();
    return BoundaryPoint(FieldElement(ctx, std::span<const Rational>(coeffs)));
  }
  Rational r = in.rational();
  in.expect_end();
  return BoundaryPoint(ctx, r);
}

std::string literal(const FieldElement& x) {
  std::string out = "{";
  const auto coeffs = x.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ',';
    out += rational_string(coeffs[i]);
  }
  return out + "}";
}

std::string literal(const BoundaryPoint& p) { return p.is_infinity() ? "inf" : literal(p.value()); }

std::optional<std::string> radical_form(const FieldElement& x) {
  const Context& ctx = x.context();
  if (ctx->degree() == 1) return rational_string(*x.as_rational());
  if (ctx->degree() != 2) return std::nullopt;
  // lambda is the positive root of x^2 + p x + r.
  const auto& mp = ctx->min_poly();
  const Integer r = mp[0];
  const Integer p = mp[1];
  const Rational a = x.coeff(0);
  const Rational b = x.coeff(1);
  const auto [s, t] = square_part(p * p - 4 * r);
  Rational rational_part = (2 * a - b * p) / 2;
  Rational surd = b * s / 2;
  rational_part.canonicalize();
  surd.canonicalize();
  const std::string root = t == 1 ? "" : "sqrt(" + t.get_str() + ")";
  if (root.empty()) return rational_string(rational_part + surd);
  std::string out;
  if (rational_part != 0) out = rational_string(rational_part);
  if (surd == 0) return out.empty() ? "0" : out;
  const Rational mag = abs(surd);
  const std::string term = (mag == 1 ? "" : rational_string(mag) + "*") + root;
  if (out.empty()) return (surd < 0 ? "-" : "") + term;
  return out + (surd < 0 ? " - " : " + ") + term;
}

// ---------------------------------------------------------------------------

json to_json(const Context& ctx) {
  if (ctx->is_theta()) return "inf";
  return ctx->q();
}

json to_json(const FieldElement& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(rational_string(c));
  return {{"q", to_json(x.context())}, {"coeffs", coeffs}};
}

json to_json(const BoundaryPoint& p) {
  if (p.is_infinity()) return {{"q", to_json(p.context())}, {"infinity", true}};
  return to_json(p.value());
}

json to_json(const GroupElement& g) {
  return {{"q", to_json(g.context())},
          {"a", to_json(g.a())["coeffs"]},
          {"b", to_json(g.b())["coeffs"]},
          {"c", to_json(g.c())["coeffs"]},
          {"d", to_json(g.d())["coeffs"]}};
}

json to_json(const farey::Face& f) {
  json vs = json::array();
  for (const auto& v : f.vertices()) vs.push_back(literal(v));
  return {{"q", to_json(f.vertices().front().context())}, {"vertices", vs}};
}

json to_json(const farey::QChain& chain) {
  json faces = json::array();
  for (const auto& f : chain.faces) faces.push_back(to_json(f)["vertices"]);
  json bridges = json::array();
  for (const auto& e : chain.bridges) bridges.push_back({literal(e.a), literal(e.b)});
  return {{"q", to_json(chain.x.context())},
          {"x", literal(chain.x)},
          {"y", literal(chain.y)},
          {"faces", faces},
          {"bridges", bridges}};
}

json to_json(const cf::RosenCF& cf) {
  return {{"q", to_json(cf.context())}, {"coeffs", cf.coeffs()}, {"text", cf.to_string()}};
}

Context context_from_json(const json& j) {
  if (j.is_string()) return parse_context(j.get<std::string>());
  if (j.is_number_integer()) return make_context(j.get<int>());
  throw ParseError("q must be an integer or \"inf\"", 0);
}

namespace {

FieldElement coeffs_from_json(const Context& ctx, const json& coeffs) {
  std::vector<Rational> values;
  for (const auto& c : coeffs) values.push_back(rational_from_string(c.get<std::string>()));
  return FieldElement(ctx, std::span<const Rational>(values));
}

}  // namespace

FieldElement field_element_from_json(const json& j) {
  return coeffs_from_json(context_from_json(j.at("q")), j.at("coeffs"));
}

BoundaryPoint point_from_json(const json& j) {
  const Context ctx = context_from_json(j.at("q"));
  if (j.value("infinity", false)) return BoundaryPoint::infinity(ctx);
  return BoundaryPoint(coeffs_from_json(ctx, j.at("coeffs")));
}

GroupElement group_element_from_json(const json& j) {
  const Context ctx = context_from_json(j.at("q"));
  return {coeffs_from_json(ctx, j.at("a")), coeffs_from_json(ctx, j.at("b")),
          coeffs_from_json(ctx, j.at("c")), coeffs_from_json(ctx, j.at("d"))};
}

namespace {

farey::Face face_from_literals(const Context& ctx, const json& vertices) {
  std::vector<farey::Vertex> vs;
  for (const auto& v : vertices) vs.push_back(parse_point(ctx, v.get<std::string>()));
  return farey::Face(std::move(vs));
}

}  // namespace

farey::Face face_from_json(const json& j) {
  return face_from_literals(context_from_json(j.at("q")), j.at("vertices"));
}

farey::QChain chain_from_json(const json& j) {
  const Context ctx = context_from_json(j.at("q"));
  farey::QChain chain{parse_point(ctx, j.at("x").get<std::string>()),
                      parse_point(ctx, j.at("y").get<std::string>()),
                      {},
                      {}};
  for (const auto& f : j.at("faces")) chain.faces.push_back(face_from_literals(ctx, f));
  for (const auto& e : j.at("bridges")) {
    chain.bridges.push_back({parse_point(ctx, e.at(0).get<std::string>()),
                             parse_point(ctx, e.at(1).get<std::string>())});
  }
  return chain;
}

cf::RosenCF cf_from_json(const json& j) {
  return cf::RosenCF(context_from_json(j.at("q")), j.at("coeffs").get<cf::Coefficients>());
}

}  // namespace rosen::io
