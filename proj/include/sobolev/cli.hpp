#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 usage or expression parse error, 2 numeric
// failure (divergent or unconverged integral, violated numeric
// precondition), 3 internal error.

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sobolev/audit.hpp"
#include "sobolev/decomp.hpp"
#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"
#include "sobolev/json_out.hpp"
#include "sobolev/parse.hpp"
#include "sobolev/quad.hpp"
#include "sobolev/space.hpp"
#include "sobolev/weak.hpp"

namespace sobolev::cli {

enum ExitCode : int {
  ok = 0,
  usage_error = 1,
  numeric_failure = 2,
  internal_error = 3,
};

enum class Format { json, text };

struct CliConfig {
  QuadConfig quad;
  int k = 1;
  Format format = Format::json;
};

namespace detail {

inline Json quadrature_json(const QuadConfig& q) {
  Json j;
  j["abs_tol"] = q.abs_tol;
  j["rel_tol"] = q.rel_tol;
  j["max_subdivisions"] = q.max_subdivisions;
  return j;
}

inline Json probe_json(const ProbeReport& p) {
  Json j;
  j["verdict"] = to_string(p.verdict);
  j["note"] = p.note;
  j["partial_sums"] = p.partial_sums;
  return j;
}

inline void write_text(const Json& j, const std::string& prefix,
                       std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      write_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                 out);
    return;
  }
  out << prefix << ": ";
  if (j.is_string())
    out << j.get<std::string>();
  else
    out << dump_json(j, -1);
  out << '\n';
}

inline void emit(const Json& doc, Format format, std::ostream& out) {
  if (format == Format::json)
    out << dump_json(doc) << '\n';
  else
    write_text(doc, "", out);
}

}  // namespace detail

// Runs one command line. argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Sobolev-space geometry on [0,1]: W^{k,2} inner products, "
               "decompositions and weak derivatives"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string format = "json";
  app.add_option("--k", cfg.k, "Sobolev order k (0 = L2, default 1)")
      ->check(CLI::Range(0, Regularity::max_order));
  app.add_option("--abs-tol", cfg.quad.abs_tol, "Absolute quadrature tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--rel-tol", cfg.quad.rel_tol, "Relative quadrature tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-subdiv", cfg.quad.max_subdivisions,
                 "Maximum number of panel bisections")
      ->check(CLI::Range(1, 1 << 24));
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> exprs;
  std::string kind;
  double exponent = 0.5;
  int order = 1;

  // Command name -> its action, filled as subcommands are registered.
  std::vector<std::pair<CLI::App*, std::function<Json()>>> actions;
  Json inputs = Json::object();

  const auto sub = [&](const char* name, const char* help,
                       std::vector<const char*> names) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    for (const char* n : names)
      s->add_option_function<std::string>(
           n, [&exprs](const std::string& v) { exprs.push_back(v); },
           "Expression in x")
          ->required();
    return s;
  };

  const auto k_reg = [&] { return Regularity(cfg.k); };
  const auto arg = [&](std::size_t i) { return parse(exprs.at(i)); };

  actions.emplace_back(sub("norm", "W^{k,2} norm of f", {"f"}), [&] {
    Json r;
    r["value"] = norm(arg(0), k_reg(), cfg.quad);
    return r;
  });
  actions.emplace_back(sub("inner", "W^{k,2} inner product of f and g", {"f", "g"}),
                       [&] {
                         Json r;
                         r["value"] = inner(arg(0), arg(1), k_reg(), cfg.quad);
                         return r;
                       });
  actions.emplace_back(sub("dist", "W^{k,2} distance between f and g", {"f", "g"}),
                       [&] {
                         Json r;
                         r["value"] = dist(arg(0), arg(1), k_reg(), cfg.quad);
                         return r;
                       });
  actions.emplace_back(
      sub("angle", "Cosine of the W^{k,2} angle between f and g", {"f", "g"}), [&] {
        const double c = cos_angle(arg(0), arg(1), k_reg(), cfg.quad);
        Json r;
        r["value"] = c;
        r["angle_rad"] = std::acos(std::clamp(c, -1.0, 1.0));
        return r;
      });
  actions.emplace_back(sub("proj", "Projection of f onto g", {"f", "g"}), [&] {
    const Projection p = proj(arg(0), arg(1), k_reg(), cfg.quad);
    Json r;
    r["coef"] = p.coef;
    r["expression"] = print(p.expression);
    return r;
  });
  actions.emplace_back(
      sub("member", "L2 and W^{1,2} membership verdicts for f", {"f"}), [&] {
        const MembershipVerdict m = membership(arg(0), cfg.quad);
        Json r;
        r["in_L2"] = to_string(m.in_L2);
        r["in_W12"] = to_string(m.in_W12);
        r["notes"] = m.notes;
        r["l2_probe"] = detail::probe_json(m.l2_probe);
        if (!m.derivative_probe.partial_sums.empty())
          r["derivative_probe"] = detail::probe_json(m.derivative_probe);
        return r;
      });
  {
    CLI::App* s = sub("holder", "Hölder quotient of f on a 201-point grid", {"f"});
    s->add_option("--exponent", exponent, "Hölder exponent in (0,1]")
        ->check(CLI::Range(0.0, 1.0));
    actions.emplace_back(s, [&] {
      inputs["exponent"] = exponent;
      Json r;
      r["value"] = holder_quotient(arg(0), exponent);
      return r;
    });
  }
  {
    CLI::App* s =
        sub("weakcheck", "Check that the second expression is the weak derivative of f",
            {"f", "derivative"});
    s->add_option("--order", order, "Derivative order (1-3)")
        ->check(CLI::Range(1, max_weak_order));
    actions.emplace_back(s, [&] {
      inputs["order"] = order;
      const WeakCheckReport w = weak_check(arg(0), arg(1), order, cfg.quad);
      Json r;
      r["order"] = w.order;
      r["verdict"] = w.pass ? "pass" : "fail";
      r["max_residual"] = w.max_residual;
      r["scale"] = w.scale;
      Json res = Json::array();
      for (const auto& x : w.residuals)
        res.push_back(Json{{"id", x.id}, {"residual", x.residual}});
      r["residuals"] = res;
      return r;
    });
  }
  {
    CLI::App* s = app.add_subcommand("decompose", "Orthogonal decomposition of f");
    s->fallthrough();
    s->add_option("kind", kind, "bergman or boundary")
        ->required()
        ->check(CLI::IsMember({"bergman", "boundary"}));
    s->add_option_function<std::string>(
         "f", [&exprs](const std::string& v) { exprs.push_back(v); },
         "Expression in x")
        ->required();
    actions.emplace_back(s, [&] {
      inputs["kind"] = kind;
      const Expr f = arg(0);
      Json r;
      if (kind == "bergman") {
        const Decomposition d = bergman_decompose(f, cfg.quad);
        r["p_part"] = print(d.p_part);
        r["q_part"] = print(d.q_part);
        r["coefficients"] = d.coefficients;
        r["ortho_residual"] = d.ortho_residual;
        const EtaReport eta = eta_recover(d.q_part, cfg.quad);
        r["eta"] = Json{{"at_0", eta.at_0}, {"at_1", eta.at_1}};
      } else {
        const BoundarySplit s = boundary_decompose(f, cfg.quad);
        const Decomposition d = to_decomposition(s, cfg.quad);
        r["alpha"] = s.alpha;
        r["beta"] = s.beta;
        r["p_part"] = print(d.p_part);
        r["q_part"] = print(d.q_part);
        r["ortho_residual"] = d.ortho_residual;
        r["ortho_exp"] = s.ortho_exp;
        r["ortho_exp_neg"] = s.ortho_exp_neg;
      }
      return r;
    });
  }
  actions.emplace_back(
      sub("crosscheck", "Boundary formulas vs Gram projection onto span{e^x, e^-x}",
          {"f"}),
      [&] {
        const CrossCheck c = boundary_vs_gram_crosscheck(arg(0), cfg.quad);
        Json r;
        r["max_abs_diff"] = c.max_abs_diff;
        r["alpha"] = c.split.alpha;
        r["beta"] = c.split.beta;
        std::vector<double> gram;
        for (Eigen::Index i = 0; i < c.gram.coeffs.size(); ++i)
          gram.push_back(c.gram.coeffs[i]);
        r["gram_coefficients"] = gram;
        return r;
      });
  actions.emplace_back(
      sub("riesz", "Riesz pairing of a representer against g in W0^{1,2}",
          {"representer", "g"}),
      [&] {
        const RieszResult rr = riesz_apply(arg(0), arg(1), cfg.quad);
        Json r;
        r["pairing"] = rr.pairing;
        r["functional_form"] = rr.functional_form;
        r["abs_diff"] = std::abs(rr.pairing - rr.functional_form);
        return r;
      });
  CLI::App* audit_cmd =
      app.add_subcommand("audit", "Recompute and classify the registered claims");
  audit_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return usage_error;
  }
  cfg.format = format == "text" ? Format::text : Format::json;

  try {
    cfg.quad.validate();
    if (audit_cmd->parsed()) {
      Json doc;
      Json entries = Json::array();
      for (const AuditEntry& e : audit(cfg.quad)) entries.push_back(to_json(e));
      doc["entries"] = entries;
      detail::emit(doc, cfg.format, out);
      return ok;
    }
    for (auto& [cmd, action] : actions) {
      if (!cmd->parsed()) continue;
      const std::vector<std::string> raw = exprs;
      Json doc;
      doc["command"] = cmd->get_name();
      inputs["expressions"] = raw;
      inputs["k"] = cfg.k;
      Json result = action();
      doc["inputs"] = inputs;
      doc["result"] = result;
      doc["quadrature"] = detail::quadrature_json(cfg.quad);
      detail::emit(doc, cfg.format, out);
      return ok;
    }
    err << app.help();
    return usage_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return numeric_failure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return numeric_failure;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return numeric_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_error;
  }
}

}  // namespace sobolev::cli
