#include "fcat/commands.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace fcat {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  Report& rep;

  void add(const std::string& name, CheckResult::Status status,
           const std::string& witness, double seconds) {
    rep.checks.push_back({name, status, witness, seconds});
  }

  void run(const std::string& name,
           const std::function<std::pair<CheckResult::Status, std::string>()>& f) {
    const auto t0 = Clock::now();
    CheckResult::Status status = CheckResult::Status::fail;
    std::string witness;
    try {
      std::tie(status, witness) = f();
    } catch (const Error& e) {
      status = CheckResult::Status::fail;
      witness = e.what();
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    add(name, status, witness, secs);
  }

  void run_bool(const std::string& name, const std::function<bool()>& f,
                const std::string& fail_witness = "") {
    run(name, [&]() -> std::pair<CheckResult::Status, std::string> {
      const bool ok = f();
      return {ok ? CheckResult::Status::pass : CheckResult::Status::fail,
              ok ? "" : fail_witness};
    });
  }
};

std::string dims_string(const Rep& m) {
  std::ostringstream os;
  os << "(";
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    os << (v ? "," : "") << m.dims[v];
  os << ")";
  return os.str();
}

std::string complex_summary(const Complex& x) {
  const Complex t = x.trimmed();
  if (t.terms.empty()) return "0";
  std::ostringstream os;
  for (int n = t.lo; n <= t.hi(); ++n) {
    if (n > t.lo) os << " -> ";
    os << "[" << n << "]" << dims_string(t.term(n));
  }
  return os.str();
}

// Matrices serialize as nested arrays of "num/den" strings.
std::string mat_nested(const Mat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols; ++j)
      os << (j ? ", " : "") << "\"" << rat_to_string(m.at(i, j)) << "\"";
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string diff_nested(const RepMor& d) {
  std::ostringstream os;
  for (std::size_t v = 0; v < d.comps.size(); ++v) {
    if (v) os << " ";
    os << d.src.q->vertices[v] << ": " << mat_nested(d.comps[v]);
  }
  return os.str();
}

void emit_axiom_report(Checker& ck, const std::string& prefix,
                       const AxiomReport& ar) {
  for (const auto& item : ar.items)
    ck.add(prefix + "/" + item.name,
           item.pass ? CheckResult::Status::pass : CheckResult::Status::fail,
           item.detail, 0.0);
}

Report run_check_axioms(const Config& cfg, std::uint64_t seed, int samples) {
  Report rep;
  std::vector<FilteredComplex> sam;
  for (int i = 0; i < samples; ++i)
    sam.push_back(
        gen_random_cellular(cfg.quiver, seed + static_cast<std::uint64_t>(i)).fc);
  Checker ck{rep};
  emit_axiom_report(ck, "f", check_f_axioms(sam));
  emit_axiom_report(ck, "sigma-gr", check_sigma_gr(sam));
  emit_axiom_report(ck, "omega", check_omega_props(sam));
  // Compatible t-structure: s-shift law on each sample.
  for (std::size_t i = 0; i < sam.size(); ++i) {
    const FilteredComplex& x = sam[i];
    ck.run_bool("t-compat/s-shift/sample-" + std::to_string(i), [&]() {
      const FilteredComplex sx = filt_shift_s(x, 1);
      bool shifted_le = true, shifted_ge = true;
      for (int n = sx.gr_lo(); n <= sx.gr_hi(); ++n) {
        if (!in_t_le(gr_complex(sx, n), n - 1, cfg.tstructure))
          shifted_le = false;
        if (!in_t_ge(gr_complex(sx, n), n - 1, cfg.tstructure))
          shifted_ge = false;
      }
      return shifted_le == cf_t_membership(x, CfSide::le, cfg.tstructure) &&
             shifted_ge == cf_t_membership(x, CfSide::ge, cfg.tstructure);
    });
  }
  // Trivially filtered heart objects sit in the filtered heart.
  for (const NamedHeart& p : cfg.probes)
    ck.run_bool("t-compat/j-heart/" + p.name, [&]() {
      return cf_heart_contains(trivially_filtered(p.obj.value),
                               cfg.tstructure)
          .ok;
    });
  rep.verdict = rep.clean(false) ? "pass" : "fail";
  return rep;
}

Report run_ext_table(const Config& cfg) {
  Report rep;
  Checker ck{rep};
  if (cfg.probes.empty()) throw Error("ext-table: config has no probes");
  for (const NamedHeart& m : cfg.probes)
    for (const NamedHeart& n : cfg.probes)
      for (int p = 0; p <= 2; ++p) {
        const auto t0 = Clock::now();
        const std::size_t d =
            derived_hom_basis(m.obj.value, n.obj.value, p).size();
        ck.add("ext/" + m.name + "/" + n.name + "/" + std::to_string(p),
               CheckResult::Status::pass, "dim = " + std::to_string(d),
               std::chrono::duration<double>(Clock::now() - t0).count());
      }
  rep.verdict = "table";
  return rep;
}

Report run_realize(const Config& cfg) {
  Report rep;
  Checker ck{rep};
  if (!cfg.realize_target) throw Error("realize: config has no realize block");
  const HeartComplex* k = cfg.find_heart_complex(*cfg.realize_target);
  if (!k) throw Error("realize: unknown heart complex " + *cfg.realize_target);
  const auto t0 = Clock::now();
  const Complex r = real_functor(*k);
  ck.add("realize/result", CheckResult::Status::pass, complex_summary(r),
         std::chrono::duration<double>(Clock::now() - t0).count());
  const Complex rt = r.trimmed();
  for (int n = rt.lo; n < rt.hi(); ++n)
    ck.add("realize/d^" + std::to_string(n), CheckResult::Status::pass,
           diff_nested(rt.diff(n)), 0.0);
  for (int n = rt.lo; n <= rt.hi(); ++n) {
    const Rep h = cohomology_rep(r, n);
    if (h.total_dim() == 0) continue;
    ck.add("realize/H^" + std::to_string(n), CheckResult::Status::pass,
           "dims = " + dims_string(h), 0.0);
  }
  // t-exactness diagnostics.
  for (int n = k->lo - 1; n <= k->hi() + 1; ++n) {
    const int deg = n;
    ck.run_bool("realize/t-cohomology/" + std::to_string(deg), [&]() {
      return same_qis_class(cohomology_t(r, deg, cfg.tstructure).value,
                            heart_complex_cohomology(*k, deg).value);
    });
  }
  rep.verdict = "computed";
  return rep;
}

Report run_verify_equivalence(const Config& cfg) {
  Report rep;
  Checker ck{rep};
  if (cfg.probes.empty())
    throw Error("verify-equivalence: config has no probes");
  const auto t0 = Clock::now();
  const Verdict v = verify_equivalence(cfg.tstructure, cfg.generators,
                                       cfg.probes);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  ck.add("criterion/ext2",
         v.ext2_ok ? CheckResult::Status::pass : CheckResult::Status::fail, "",
         secs);
  for (const CriterionWitness& w : v.ext2_witnesses)
    ck.add("criterion/ext2/" + w.from + "/" + w.to, CheckResult::Status::fail,
           "dim Hom(" + w.from + ", " + w.to + "[" + std::to_string(w.shift) +
               "]) = " + std::to_string(w.dim),
           0.0);
  ck.add("criterion/tau1",
         v.tau1_ok ? CheckResult::Status::pass : CheckResult::Status::fail,
         v.tau1_witnesses.empty() ? "" : v.tau1_witnesses.front(), 0.0);
  if (v.generation_checked) {
    ck.add("generation",
           v.generation_ok ? CheckResult::Status::pass
                           : CheckResult::Status::fail,
           v.generation_witnesses.empty() ? "" : v.generation_witnesses.front(),
           0.0);
    for (const std::string& w : v.generation_witnesses)
      ck.add("generation/witness", CheckResult::Status::fail, w, 0.0);
  }
  rep.verdict = v.conclusion;
  return rep;
}

Report run_functoriality(const Config& cfg) {
  Report rep;
  Checker ck{rep};
  if (cfg.functoriality_probes.empty())
    throw Error("functoriality: config has no functoriality blocks");
  for (const auto& fp : cfg.functoriality_probes) {
    const SubcatPredicate* d = cfg.find_subcat(fp.subcat);
    const HeartComplex* k = cfg.find_heart_complex(fp.complex);
    const auto t0 = Clock::now();
    const FunctorialityReport fr =
        functoriality_square(*d, cfg.tstructure, *k);
    const double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    CheckResult::Status st = CheckResult::Status::unknown;
    if (fr.ok == TriBool::yes) st = CheckResult::Status::pass;
    if (fr.ok == TriBool::no) st = CheckResult::Status::fail;
    ck.add("square/" + fp.subcat + "/" + fp.complex, st, fr.detail, secs);
    for (const auto& [level, verdict] : fr.df_membership) {
      CheckResult::Status ms = CheckResult::Status::unknown;
      if (verdict == TriBool::yes) ms = CheckResult::Status::pass;
      if (verdict == TriBool::no) ms = CheckResult::Status::fail;
      ck.add("df-membership/" + fp.subcat + "/" + fp.complex + "/gr" +
                 std::to_string(level),
             ms, "", 0.0);
    }
  }
  rep.verdict = rep.clean(false) ? "commutes" : "fails";
  return rep;
}

}  // namespace

Report run_command(const std::string& command, const Config& cfg,
                   const RunOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  const int samples = opts.samples.value_or(cfg.samples);
  Report rep;
  if (command == "check-axioms") {
    rep = run_check_axioms(cfg, seed, samples);
  } else if (command == "ext-table") {
    rep = run_ext_table(cfg);
  } else if (command == "realize") {
    rep = run_realize(cfg);
  } else if (command == "verify-equivalence") {
    rep = run_verify_equivalence(cfg);
  } else if (command == "functoriality") {
    rep = run_functoriality(cfg);
  } else {
    throw Error("unknown command: " + command);
  }
  rep.command = command;
  rep.config_name = cfg.name;
  rep.seed = seed;
  rep.samples = samples;
  return rep;
}

}  // namespace fcat
