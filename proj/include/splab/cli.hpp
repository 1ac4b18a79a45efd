#pragma once

// Command-line front end. run() is the whole program; tools/splab.cpp only
// forwards argv, so the test suites drive the exact same code path.

#include <exception>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "splab/arith.hpp"
#include "splab/dependence.hpp"
#include "splab/elliptic.hpp"
#include "splab/mulgroup.hpp"
#include "splab/order_search.hpp"
#include "splab/report.hpp"

namespace splab::cli {

using nlohmann::json;

/// Bad flags or inputs, detected before any computation starts.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int {
  kOk = 0,
  kWitnessOrRefuted = 1,
  kUsage = 2,
  kInconclusive = 3,
  kResource = 4,
};

struct ExperimentConfig {
  std::string subcommand;
  std::string system = "mul";
  std::string curve;
  std::string x;
  std::string y;
  std::vector<std::string> elements;  // order-search, mul
  std::vector<std::string> points;    // order-search, ec
  std::vector<std::string> ps;        // implication / detect-relation / pair-relation
  std::vector<std::string> qs;
  std::string p0;
  std::string q0;
  u64 l = 0;
  std::vector<unsigned> ks;
  u64 p = 0;
  u64 p_min = 2;
  u64 p_max = 0;
  u64 n_max = 100;
  u64 m_bound = 64;
  u64 relation_bound = 5;
  bool details = false;
  std::string format = "text";
  u64 seed = 1;
  unsigned threads = 0;  // not part of the serialized config: results must not depend on it

  json to_json() const {
    return {{"subcommand", subcommand},
            {"system", system},
            {"curve", curve},
            {"x", x},
            {"y", y},
            {"elements", elements},
            {"points", points},
            {"Ps", ps},
            {"Qs", qs},
            {"P0", p0},
            {"Q0", q0},
            {"l", std::to_string(l)},
            {"ks", ks},
            {"p", std::to_string(p)},
            {"p_min", std::to_string(p_min)},
            {"p_max", std::to_string(p_max)},
            {"n_max", std::to_string(n_max)},
            {"m_bound", std::to_string(m_bound)},
            {"relation_bound", std::to_string(relation_bound)},
            {"details", details},
            {"format", format},
            {"seed", std::to_string(seed)}};
  }

  static ExperimentConfig from_json(const json& j) {
    ExperimentConfig c;
    auto u = [&](const char* k) { return static_cast<u64>(std::stoull(j.at(k).get<std::string>())); };
    c.subcommand = j.at("subcommand").get<std::string>();
    c.system = j.at("system").get<std::string>();
    c.curve = j.at("curve").get<std::string>();
    c.x = j.at("x").get<std::string>();
    c.y = j.at("y").get<std::string>();
    c.elements = j.at("elements").get<std::vector<std::string>>();
    c.points = j.at("points").get<std::vector<std::string>>();
    c.ps = j.at("Ps").get<std::vector<std::string>>();
    c.qs = j.at("Qs").get<std::vector<std::string>>();
    c.p0 = j.at("P0").get<std::string>();
    c.q0 = j.at("Q0").get<std::string>();
    c.l = u("l");
    c.ks = j.at("ks").get<std::vector<unsigned>>();
    c.p = u("p");
    c.p_min = u("p_min");
    c.p_max = u("p_max");
    c.n_max = u("n_max");
    c.m_bound = u("m_bound");
    c.relation_bound = u("relation_bound");
    c.details = j.at("details").get<bool>();
    c.format = j.at("format").get<std::string>();
    c.seed = u("seed");
    return c;
  }

  bool operator==(const ExperimentConfig& o) const { return to_json() == o.to_json(); }

  bool is_ec() const { return system == "ec"; }

  /// Rejects inconsistent combinations before any computation.
  void validate() const {
    auto need = [](bool ok, const std::string& msg) {
      if (!ok) throw usage_error(msg);
    };
    need(system == "mul" || system == "ec", "--system must be mul or ec");
    need(format == "text" || format == "json" || format == "csv", "--format must be text, json or csv");
    need(format != "csv" || subcommand == "order-search", "csv output is only available for order-search");
    need(!is_ec() || !curve.empty() || subcommand == "erdos", "--system ec needs --curve a1,a2,a3,a4,a6");
    if (is_ec()) EllipticCurve::parse(curve);
    if (subcommand == "erdos") {
      need(system == "mul", "erdos works in the multiplicative system only");
      need(!x.empty() && !y.empty(), "erdos needs --x and --y");
      for (const auto* s : {&x, &y})
        need(!MulElement::parse(*s).is_torsion(), "erdos: x and y must not be 0, 1 or -1");
      need(n_max >= 1 && p_max >= 2, "erdos needs --n-max >= 1 and --p-max >= 2");
    } else if (subcommand == "order-search") {
      need(l != 0 && is_prime(l), "order-search needs a prime --l");
      need(!ks.empty(), "order-search needs --ks");
      const std::size_t arity = is_ec() ? points.size() : elements.size();
      need(arity > 0, is_ec() ? "order-search needs --points" : "order-search needs --elements");
      need(arity == ks.size(), "--ks arity must match the number of elements/points");
      need(p_min >= 2 && p_max >= p_min, "need 2 <= --p-min <= --p-max");
    } else if (subcommand == "implication") {
      need(!ps.empty() && ps.size() == qs.size(), "implication needs --Ps and --Qs of equal length");
      need(p0.empty() == q0.empty(), "--P0 and --Q0 go together");
      need(is_prime(p), "implication needs a prime --p");
      need(m_bound >= 1, "--m-bound must be positive");
    } else if (subcommand == "detect-relation") {
      need(!ps.empty() && ps.size() == qs.size(), "detect-relation needs --P and --Q of equal length");
      need(p_min >= 2 && p_max >= p_min, "need 2 <= --p-min <= --p-max");
    } else if (subcommand == "pair-relation") {
      need(!ps.empty() && ps.size() == qs.size(), "pair-relation needs --P and --Q of equal length");
      need(relation_bound >= 1, "--relation-bound must be positive");
    } else if (subcommand == "count-points") {
      need(is_ec(), "count-points needs --system ec");
      need(is_prime(p), "count-points needs a prime --p");
    } else {
      throw usage_error("unknown subcommand '" + subcommand + "'");
    }
  }
};

namespace detail {

/// Element lists accept both "2 3" and "2,3".
inline std::vector<std::string> split_elements(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = item.find(',', start);
      const std::string piece = splab::detail::trim(item.substr(start, comma - start));
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

template <class Parse>
auto parse_all(const std::vector<std::string>& items, Parse parse) {
  std::vector<decltype(parse(std::string{}))> out;
  for (const auto& s : items) out.push_back(parse(s));
  return out;
}

inline std::vector<MulElement> mul_list(const std::vector<std::string>& items) {
  return parse_all(items, [](const std::string& s) { return MulElement::parse(s); });
}

inline std::vector<RationalPoint> point_list(const EllipticCurve& E, const std::vector<std::string>& items) {
  return parse_all(items, [&](const std::string& s) {
    RationalPoint P = RationalPoint::parse(s);
    if (!on_curve(E, P)) throw usage_error("point " + s + " is not on the curve " + E.to_string());
    return P;
  });
}

struct Outcome {
  json result;
  std::vector<u64> exclusions;
  std::string text;
  std::string csv;
  int code = kOk;
};

inline Outcome do_erdos(const ExperimentConfig& c, Parallelism par) {
  const SupportReport r = erdos_test(MulElement::parse(c.x), MulElement::parse(c.y), c.n_max, c.p_max, par);
  Outcome o;
  o.result = report::to_json(r);
  o.exclusions = r.exclusions;
  std::ostringstream t;
  t << "erdos x=" << r.x.to_string() << " y=" << r.y.to_string() << " n_max=" << r.n_max << " p_max=" << r.p_max << "\n";
  if (r.witness) {
    t << "verdict: Witness(n=" << r.witness->n << ", p=" << r.witness->prime << ", side=" << r.witness->side << ")";
    t << (r.witness->cross_checked ? " [factorization cross-check ok]" : "") << "\n";
    o.code = kWitnessOrRefuted;
  } else {
    t << "verdict: Equal-in-range\n";
  }
  t << "excluded primes: " << report::join(r.exclusions, " ") << "\n";
  o.text = t.str();
  return o;
}

inline Outcome do_order_search(const ExperimentConfig& c, Parallelism par) {
  const OrderProfile profile(c.l, c.ks);
  const PrimeRange range(c.p_min, c.p_max);
  SweepReport r;
  if (c.is_ec()) {
    const EllipticCurve E = EllipticCurve::parse(c.curve);
    r = sweep_ec(E, point_list(E, c.points), profile, range, par);
  } else {
    r = sweep_mul(mul_list(c.elements), profile, range, par);
  }
  Outcome o;
  o.result = report::to_json(r, c.details);
  o.exclusions = r.exclusions;
  std::ostringstream t;
  t << "order-search system=" << r.system << " l=" << r.profile.l << " ks=(";
  for (std::size_t i = 0; i < r.profile.ks.size(); ++i) t << (i ? "," : "") << r.profile.ks[i];
  t << ") primes " << r.lo << ".." << r.hi << "\n";
  t << "scanned " << r.scanned << ", matches " << r.matches.size() << ", density " << report::fixed6(r.density()) << "\n";
  t << "excluded primes: " << report::join(r.exclusions, " ") << "\n";
  t << "p\tl-parts\n";
  for (const auto& row : r.rows)
    if (row.match || c.details) t << row.p << "\t" << report::join(row.l_parts) << (row.match ? "\tmatch" : "") << "\n";
  o.text = t.str();
  o.csv = report::sweep_csv(r);
  return o;
}

template <class System>
json implication_json(const System& sys, const ExperimentConfig& c, std::ostringstream& t,
                      const std::vector<typename System::value_type>& Ps,
                      const std::vector<typename System::value_type>& Qs,
                      const std::optional<std::pair<typename System::value_type, typename System::value_type>>& affine) {
  const ImplicationReport rep = affine ? affine_implication_at(sys, std::span(Ps), affine->first, std::span(Qs), affine->second, c.p, c.m_bound)
                                       : implication_at(sys, std::span(Ps), std::span(Qs), c.p, c.m_bound);
  t << (affine ? "affine implication" : "implication") << " at p=" << c.p << ": " << to_string(rep.status);
  if (!rep.witness.empty()) t << "(m=(" << report::join(rep.witness) << "))";
  t << " [" << to_string(rep.method);
  if (rep.method == ImplicationMethod::BoxBruteForce) t << ", bound " << rep.box_bound;
  t << "]\n";
  return report::to_json(rep);
}

inline Outcome do_implication(const ExperimentConfig& c) {
  Outcome o;
  std::ostringstream t;
  const bool affine = !c.p0.empty();
  if (c.is_ec()) {
    const EcSystem sys{EllipticCurve::parse(c.curve)};
    const auto Ps = point_list(sys.curve, c.ps), Qs = point_list(sys.curve, c.qs);
    std::optional<std::pair<RationalPoint, RationalPoint>> aff;
    if (affine) aff = std::pair{RationalPoint::parse(c.p0), RationalPoint::parse(c.q0)};
    o.result = {{"implication", implication_json(sys, c, t, Ps, Qs, aff)}};
  } else {
    const MulSystem sys;
    const auto Ps = mul_list(c.ps), Qs = mul_list(c.qs);
    std::optional<std::pair<MulElement, MulElement>> aff;
    if (affine) aff = std::pair{MulElement::parse(c.p0), MulElement::parse(c.q0)};
    o.result = {{"implication", implication_json(sys, c, t, Ps, Qs, aff)}};
    if (!affine) {
      const SchinzelCondition sc = schinzel_condition_at(Ps, Qs, c.p);
      o.result["exponent_condition"] = report::to_json(sc);
      t << "exponent condition: " << to_string(sc.status);
      if (sc.status == ConditionStatus::Holds)
        t << "(e == " << sc.constraint.residue << " mod " << sc.constraint.modulus << ")";
      if (sc.status == ConditionStatus::Fails) t << "(m=(" << report::join(sc.witness) << "))";
      t << "\n";
    }
  }
  o.text = t.str();
  return o;
}

inline Outcome relation_outcome(const RelationWitness& w, const std::string& title) {
  Outcome o;
  o.result = report::to_json(w);
  o.exclusions = w.exclusions;
  o.text = title + ": " + report::describe(w) + "\n";
  if (!w.reason.empty()) o.text += "reason: " + w.reason + "\n";
  if (w.primes_sampled > 0) o.text += "good primes sampled: " + std::to_string(w.primes_sampled) + "\n";
  if (!w.exclusions.empty()) o.text += "excluded primes: " + report::join(w.exclusions, " ") + "\n";
  switch (w.kind) {
    case RelationKind::Exponent:
    case RelationKind::Pairs: o.code = kOk; break;
    case RelationKind::Refuted: o.code = kWitnessOrRefuted; break;
    case RelationKind::Inconclusive: o.code = kInconclusive; break;
  }
  return o;
}

inline Outcome do_detect_relation(const ExperimentConfig& c, Parallelism par) {
  const PrimeRange range(c.p_min, c.p_max);
  if (c.is_ec()) {
    const EcSystem sys{EllipticCurve::parse(c.curve)};
    const auto Ps = point_list(sys.curve, c.ps), Qs = point_list(sys.curve, c.qs);
    return relation_outcome(infer_exponent(sys, std::span(Ps), std::span(Qs), range, par, c.m_bound), "detect-relation");
  }
  const auto Ps = mul_list(c.ps), Qs = mul_list(c.qs);
  for (const auto& v : {Ps, Qs})
    for (const auto& e : v)
      if (e.is_torsion()) throw usage_error("detect-relation: elements must not be 1 or -1");
  return relation_outcome(recover_exponent_mul(Ps, Qs, range, par), "detect-relation");
}

inline Outcome do_pair_relation(const ExperimentConfig& c) {
  if (c.is_ec()) {
    const EcSystem sys{EllipticCurve::parse(c.curve)};
    const auto Ps = point_list(sys.curve, c.ps), Qs = point_list(sys.curve, c.qs);
    return relation_outcome(search_pair_relations(sys, std::span(Ps), std::span(Qs), c.relation_bound), "pair-relation");
  }
  const auto Ps = mul_list(c.ps), Qs = mul_list(c.qs);
  return relation_outcome(search_pair_relations(MulSystem{}, std::span(Ps), std::span(Qs), c.relation_bound), "pair-relation");
}

inline Outcome do_count_points(const ExperimentConfig& c) {
  const EllipticCurve E = EllipticCurve::parse(c.curve);
  if (!E.is_good_prime(c.p)) throw usage_error("count-points: p divides the discriminant");
  const GroupOrderCertificate cert = count_points(E, c.p, c.seed);
  Outcome o;
  o.result = report::to_json(cert);
  o.exclusions = {};
  o.text = "#E(F_" + std::to_string(cert.p) + ") = " + std::to_string(cert.order) + " [" + to_string(cert.method) + "]\n";
  return o;
}

}  // namespace detail

/// Executes one command line. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"splab: support-problem experiments over Q^* and E(Q)"};
  app.require_subcommand(1);
  ExperimentConfig c;
  app.add_option("--format", c.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", c.threads, "worker threads (default: SPLAB_THREADS or 1)");
  app.add_option("--seed", c.seed, "seed for randomized steps");

  auto system_opt = [&](CLI::App* sub) {
    sub->add_option("--system", c.system, "mul | ec")->check(CLI::IsMember({"mul", "ec"}));
    sub->add_option("--curve", c.curve, "a1,a2,a3,a4,a6");
  };
  auto range_opt = [&](CLI::App* sub) {
    sub->add_option("--p-min", c.p_min, "smallest prime scanned");
    sub->add_option("--p-max", c.p_max, "largest prime scanned")->required();
  };

  auto* erdos = app.add_subcommand("erdos", "search n, p with p in exactly one of Supp(x^n-1), Supp(y^n-1)");
  erdos->add_option("--x", c.x)->required();
  erdos->add_option("--y", c.y)->required();
  erdos->add_option("--n-max", c.n_max);
  erdos->add_option("--p-max", c.p_max)->required();

  auto* search = app.add_subcommand("order-search", "primes where reduction orders have prescribed l-parts");
  system_opt(search);
  search->add_option("--elements", c.elements, "elements of Q^* (mul)");
  search->add_option("--points", c.points, "rational points (ec)");
  search->add_option("--l", c.l)->required();
  search->add_option("--ks", c.ks)->delimiter(',')->required();
  range_opt(search);
  search->add_flag("--details", c.details, "report every scanned prime");

  auto* impl = app.add_subcommand("implication", "per-prime support implication");
  system_opt(impl);
  impl->add_option("--Ps,--P", c.ps)->required();
  impl->add_option("--Qs,--Q", c.qs)->required();
  impl->add_option("--P0", c.p0, "affine target on the P side");
  impl->add_option("--Q0", c.q0, "affine target on the Q side");
  impl->add_option("--p", c.p)->required();
  impl->add_option("--m-bound", c.m_bound);

  auto* detect = app.add_subcommand("detect-relation", "recover e with Q_i = e P_i");
  system_opt(detect);
  detect->add_option("--P,--Ps", c.ps)->required();
  detect->add_option("--Q,--Qs", c.qs)->required();
  range_opt(detect);
  detect->add_option("--m-bound", c.m_bound);

  auto* pair = app.add_subcommand("pair-relation", "bounded search for alpha P + beta Q = 0");
  system_opt(pair);
  pair->add_option("--P,--Ps", c.ps)->required();
  pair->add_option("--Q,--Qs", c.qs)->required();
  pair->add_option("--relation-bound", c.relation_bound);

  auto* count = app.add_subcommand("count-points", "#E(F_p) with its certificate");
  system_opt(count);
  count->add_option("--p", c.p)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.subcommand == "count-points" && c.curve.size() > 0) c.system = "ec";
  if (c.subcommand != "order-search" || !c.is_ec()) c.elements = detail::split_elements(c.elements);
  if (!c.is_ec()) {
    c.ps = detail::split_elements(c.ps);
    c.qs = detail::split_elements(c.qs);
  }

  detail::Outcome o;
  try {
    c.validate();
    const Parallelism par{c.threads};
    if (c.subcommand == "erdos")
      o = detail::do_erdos(c, par);
    else if (c.subcommand == "order-search")
      o = detail::do_order_search(c, par);
    else if (c.subcommand == "implication")
      o = detail::do_implication(c);
    else if (c.subcommand == "detect-relation")
      o = detail::do_detect_relation(c, par);
    else if (c.subcommand == "pair-relation")
      o = detail::do_pair_relation(c);
    else
      o = detail::do_count_points(c);
  } catch (const resource_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  if (c.format == "json")
    out << report::envelope(c.to_json(), o.exclusions, o.result).dump(2) << "\n";
  else if (c.format == "csv")
    out << o.csv;
  else
    out << o.text;
  return o.code;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"splab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace splab::cli
