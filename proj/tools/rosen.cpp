// rosen: command-line front end. Standard output is JSON only; diagnostics go
// to standard error. Exit codes: 0 ok, 2 parse, 3 domain, 4 internal.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rosen/cf.hpp"
#include "rosen/error.hpp"
#include "rosen/io.hpp"
#include "rosen/oracle.hpp"
#include "rosen/render.hpp"

using namespace rosen;
using io::json;

namespace {

enum Exit { kOk = 0, kParse = 2, kDomain = 3, kInternal = 4 };

struct Options {
  std::string q;
  std::vector<std::string> args;
  double tol = 1e-9;
  std::size_t max_n = 200;
  unsigned precision_bits = 64;
  bool compact = false;
  bool oracle = false;
  bool chain = false;
  std::string svg;
};

// Splits "q=N" tokens off the positional arguments.
Context take_context(Options& o) {
  std::vector<std::string> rest;
  for (const auto& a : o.args) {
    if (a.rfind("q=", 0) == 0 && a.find('[') == std::string::npos) {
      o.q = a;
    } else {
      rest.push_back(a);
    }
  }
  o.args = rest;
  return o.q.empty() ? nullptr : io::parse_context(o.q);
}

Context require_context(Context ctx) {
  if (!ctx) throw ParseError("missing q (pass q=N or --q N)", 0);
  return ctx;
}

const std::string& operand(const Options& o, std::size_t i, const char* what) {
  if (i >= o.args.size()) throw ParseError(std::string("missing ") + what, 0);
  return o.args[i];
}

std::string decimal(const Rational& x, unsigned bits) {
  const std::size_t digits = std::max<std::size_t>(6, static_cast<std::size_t>(bits * 0.30103));
  mpf_class f(x, bits + 32);
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, digits);
  if (mant.empty()) return "0";
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  if (exp <= 0) return sign + "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
  if (static_cast<std::size_t>(exp) >= mant.size()) {
    return sign + mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
  }
  return sign + mant.substr(0, static_cast<std::size_t>(exp)) + "." +
         mant.substr(static_cast<std::size_t>(exp));
}

json point_report(const BoundaryPoint& p, unsigned bits) {
  json j{{"literal", io::literal(p)}, {"exact", io::to_json(p)}};
  if (p.is_infinity()) return j;
  if (auto r = io::radical_form(p.value())) j["radical"] = *r;
  const Interval box = p.value().approximate(bits);
  j["decimal"] = decimal((box.lo + box.hi) / 2, bits);
  j["precision_bits"] = bits;
  return j;
}

json path_json(const cf::Path& path) {
  json out = json::array();
  for (const auto& v : path) out.push_back(io::literal(v));
  return out;
}

void write_svg(const Options& o, const render::Scene& scene) {
  if (o.svg.empty()) return;
  std::ofstream file(o.svg);
  if (!file) throw DomainError("cannot open " + o.svg + " for writing");
  file << render::svg(scene);
  if (!file) throw DomainError("failed writing " + o.svg);
}

BoundaryPoint target(const Context& ctx, const std::string& text) {
  return io::parse_point(ctx, text);
}

// ---------------------------------------------------------------------------

json cmd_eval(Options& o) {
  const Context fallback = take_context(o);
  const cf::RosenCF f = io::parse_finite_cf(operand(o, 0, "continued fraction"), fallback);
  const cf::Path path = cf::convergents(f);
  write_svg(o, {f.context(), {}, {path}});
  return {{"input", f.to_string()},
          {"q", io::to_json(f.context())},
          {"length", f.size()},
          {"value", point_report(cf::evaluate(f), o.precision_bits)},
          {"convergents", path_json(path)}};
}

json cmd_expand(Options& o) {
  const Context ctx = require_context(take_context(o));
  const BoundaryPoint y = target(ctx, operand(o, 0, "target"));
  const cf::RosenCF e = cf::nearest_integer_expansion(y);
  const std::size_t d = oracle::distance(BoundaryPoint::infinity(ctx), y);
  return {{"q", io::to_json(ctx)},
          {"target", point_report(y, o.precision_bits)},
          {"expansion", io::to_json(e)},
          {"length", e.size()},
          {"distance", d},
          {"length_equals_distance", e.size() == d}};
}

json cmd_check(Options& o) {
  const Context fallback = take_context(o);
  const cf::RosenCF f = io::parse_finite_cf(operand(o, 0, "continued fraction"), fallback);
  const Context& ctx = f.context();
  const bool q3 = !ctx->is_theta() && ctx->q() == 3;
  json j{{"input", f.to_string()}, {"q", io::to_json(ctx)}};
  if (q3) {
    j["method"] = "oracle";
    j["geodesic"] = oracle::is_geodesic_oracle(f);
    return j;
  }
  const auto match = cf::find_forbidden_pattern(f);
  j["method"] = "automaton";
  j["geodesic"] = !match.has_value();
  if (match) j["reason"] = match->describe();
  if (o.oracle) {
    const bool truth = oracle::is_geodesic_oracle(f);
    j["oracle"] = truth;
    j["agrees"] = truth == !match.has_value();
  }
  return j;
}

json cmd_reduce(Options& o) {
  const Context fallback = take_context(o);
  const cf::RosenCF f = io::parse_finite_cf(operand(o, 0, "continued fraction"), fallback);
  std::vector<cf::RewriteStep> steps;
  const cf::RosenCF r = cf::reduce_to_geodesic(f, &steps);
  json trace = json::array();
  for (const auto& s : steps) {
    trace.push_back({{"rewrite", s.match.describe()}, {"before", s.before}, {"after", s.after}});
  }
  const BoundaryPoint value = cf::evaluate(r);
  json j{{"input", f.to_string()},
         {"q", io::to_json(f.context())},
         {"result", io::to_json(r)},
         {"length", r.size()},
         {"steps", trace},
         {"value", point_report(value, o.precision_bits)},
         {"value_preserved", value == cf::evaluate(f)}};
  if (o.oracle) {
    j["distance"] = oracle::distance(BoundaryPoint::infinity(f.context()), value);
  }
  return j;
}

json cmd_enumerate(Options& o) {
  const Context ctx = require_context(take_context(o));
  const BoundaryPoint y = target(ctx, operand(o, 0, "target"));
  const auto all = cf::enumerate_geodesic_expansions(y);
  json list = json::array();
  for (const auto& e : all) list.push_back(e.coeffs());
  json j{{"q", io::to_json(ctx)},
         {"target", point_report(y, o.precision_bits)},
         {"count", all.size()},
         {"expansions", list}};
  if (!ctx->is_theta()) {
    const std::size_t D = farey::chain_length_D(BoundaryPoint::infinity(ctx), y);
    j["D"] = D;
    j["fibonacci_bound"] = cf::fibonacci(D);
    j["bound"] = cf::geodesic_count_bound(ctx, D);
  }
  if (o.oracle && !ctx->is_theta()) {
    j["oracle_count"] = oracle::all_geodesic_paths(BoundaryPoint::infinity(ctx), y).size();
  }
  return j;
}

json cmd_chain(Options& o) {
  const Context ctx = require_context(take_context(o));
  const BoundaryPoint y = target(ctx, operand(o, 0, "target"));
  const BoundaryPoint x =
      o.args.size() > 1 ? target(ctx, o.args[1]) : BoundaryPoint::infinity(ctx);
  const farey::QChain chain = farey::q_chain(x, y);
  const oracle::ChainGraph g = oracle::chain_graph(chain);
  write_svg(o, {ctx, chain.faces, {}});
  return {{"q", io::to_json(ctx)},
          {"D", chain.faces.size()},
          {"vertex_count", g.vertices.size()},
          {"edge_count", g.edges.size()},
          {"chain", io::to_json(chain)}};
}

json cmd_distance(Options& o) {
  const Context ctx = require_context(take_context(o));
  const BoundaryPoint a = target(ctx, operand(o, 0, "first vertex"));
  const BoundaryPoint b = target(ctx, operand(o, 1, "second vertex"));
  return {{"q", io::to_json(ctx)},
          {"x", io::literal(a)},
          {"y", io::literal(b)},
          {"distance", oracle::distance(a, b)}};
}

json cmd_limit(Options& o) {
  const Context fallback = take_context(o);
  const cf::InfiniteCF f = io::parse_infinite_cf(operand(o, 0, "periodic continued fraction"),
                                                 fallback);
  const auto rep = cf::convergence_estimate(f, o.tol, o.max_n, std::max(o.precision_bits, 96u));
  json j{{"input", f.to_string()},
         {"q", io::to_json(f.context())},
         {"tol", o.tol},
         {"max_n", o.max_n},
         {"converged", rep.converged},
         {"diverged", !rep.converged},
         {"terms", rep.terms},
         {"repeated_convergent", rep.repeated}};
  if (rep.repeated_value) j["repeated_value"] = io::literal(*rep.repeated_value);
  if (rep.limit) {
    j["interval"] = {decimal(rep.limit->lo, o.precision_bits),
                     decimal(rep.limit->hi, o.precision_bits)};
    j["approximation"] = decimal((rep.limit->lo + rep.limit->hi) / 2, o.precision_bits);
  }
  if (rep.last) j["last_convergent"] = io::literal(*rep.last);
  if (!f.context()->is_theta() && f.context()->q() != 3) {
    j["geodesic_prefix"] = cf::is_geodesic_infinite_prefix(f, rep.terms);
  }
  return j;
}

json cmd_render(Options& o) {
  const Context fallback = take_context(o);
  if (o.svg.empty()) throw ParseError("render needs --svg OUT", 0);
  const cf::RosenCF f = io::parse_finite_cf(operand(o, 0, "continued fraction"), fallback);
  const Context& ctx = f.context();
  const cf::Path path = cf::convergents(f);
  render::Scene scene{ctx, {}, {path}};
  const BoundaryPoint inf = BoundaryPoint::infinity(ctx);
  const BoundaryPoint y = path.back();
  if (o.chain && !ctx->is_theta() && !y.is_infinity() && y != inf &&
      !farey::adjacent(inf, y)) {
    scene.faces = farey::q_chain(inf, y).faces;
  }
  write_svg(o, scene);
  return {{"input", f.to_string()},
          {"svg", o.svg},
          {"path", path_json(path)},
          {"faces", scene.faces.size()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rosen continued fractions and Farey graphs of Hecke groups"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--q", o.q, "q (integer >= 3 or inf)")->each([&o](const std::string& v) {
    o.q = "q=" + v;
  });
  app.add_flag("--json", o.compact, "compact single-line JSON");

  struct Entry {
    const char* name;
    const char* help;
    json (*run)(Options&);
  };
  const std::vector<Entry> commands{
      {"eval", "value and convergents of a finite CF", cmd_eval},
      {"expand", "nearest-integer expansion of a vertex", cmd_expand},
      {"check", "geodesic test with the reason when it fails", cmd_check},
      {"reduce", "rewrite a CF to a geodesic one", cmd_reduce},
      {"enumerate", "all geodesic expansions of a vertex", cmd_enumerate},
      {"chain", "q-chain from infinity (or a second vertex) to a vertex", cmd_chain},
      {"distance", "graph distance between two vertices", cmd_distance},
      {"limit", "convergence of a periodic infinite CF", cmd_limit},
      {"render", "SVG of a path of convergents", cmd_render},
  };
  const Entry* chosen = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    // Operands are taken verbatim from remaining(): a positional vector option
    // would split "[1,2]" into two values.
    sub->allow_extras();
    sub->add_option("--q", o.q, "q (integer >= 3 or inf)")->each([&o](const std::string& v) {
      o.q = "q=" + v;
    });
    sub->add_option("--tol", o.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-n", o.max_n, "maximum number of terms");
    sub->add_option("--precision-bits", o.precision_bits, "bits for decimal renderings");
    sub->add_flag("--json", o.compact, "compact single-line JSON");
    sub->add_flag("--oracle", o.oracle, "cross-check against the brute-force oracle");
    sub->add_flag("--chain", o.chain, "render: shade the q-chain");
    sub->add_option("--svg", o.svg, "write an SVG figure to this file");
    sub->callback([&chosen, &c, &o, sub]() {
      chosen = &c;
      o.args = sub->remaining();
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cerr << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }

  for (const auto& a : o.args) {
    if (a.rfind("--", 0) == 0) {
      std::cerr << "error: unknown option " << a << "\n";
      return kParse;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    json result = chosen->run(o);
    result["command"] = chosen->name;
    result["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << (o.compact ? result.dump() : result.dump(2)) << "\n";
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
