// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Sample counts meet the stated minimums; exact arithmetic
// throughout, no tolerances anywhere.

#include "fcat/commands.hpp"

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

using namespace fcat;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion
            << ": " << what;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

QuiverPtr a2() {
  static QuiverPtr q = make_quiver({"1", "2"}, {{"1", "2", "a"}});
  return q;
}
QuiverPtr a3() {
  static QuiverPtr q =
      make_quiver({"1", "2", "3"}, {{"1", "2", "a"}, {"2", "3", "b"}});
  return q;
}

Rep s1() { return Rep::simple(a2(), 0); }
Rep s2() { return Rep::simple(a2(), 1); }
Rep p1() {
  Rep m;
  m.q = a2();
  m.dims = {1, 1};
  m.maps = {Mat::identity(1)};
  return m;
}

Complex c(const Rep& m, int deg = 0) { return Complex::concentrated(m, deg); }

TStructureSpec pos_t() {
  return TStructureSpec::tilted(TorsionPair{{s1(), p1()}, {"S1", "P1"}});
}

// Deterministic random bounded heart complex from a pool of heart objects.
HeartComplex random_heart_complex(const TStructureSpec& t,
                                  const std::vector<HeartObject>& pool,
                                  Rng& rng, int len) {
  HeartComplex k;
  k.t = t;
  k.lo = static_cast<int>(rng.range(-1, 0));
  for (int i = 0; i < len; ++i)
    k.terms.push_back(pool[static_cast<std::size_t>(
        rng.range(0, static_cast<long>(pool.size()) - 1))]);
  for (int i = 0; i + 1 < len; ++i) {
    const auto basis =
        derived_hom_basis(k.terms[i].value, k.terms[i + 1].value, 0);
    DerivedMor d = derived_zero(k.terms[i].value, k.terms[i + 1].value, 0);
    if (!basis.empty()) {
      if (k.diffs.empty() || k.diffs.back().is_zero()) {
        for (const auto& b : basis) d = d + b.scaled(Rat(rng.range(-2, 2)));
      } else {
        // Sample from the kernel of precomposition with the previous
        // differential so that d^2 stays null-homotopic.
        std::vector<DerivedMor> composed;
        for (const auto& b : basis)
          composed.push_back(derived_compose(b, k.diffs.back()));
        const auto rel = derived_relation_space(composed);
        for (const auto& coeffs : rel) {
          const Rat w(rng.range(-2, 2));
          for (std::size_t j = 0; j < basis.size(); ++j)
            d = d + basis[j].scaled(w * coeffs[j]);
        }
      }
    }
    k.diffs.push_back(std::move(d));
  }
  k.check();
  return k;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace

int main(int argc, char** argv) {
  int per_quiver = 52;  // >= 100 samples total across the two quivers
  if (argc > 1) per_quiver = std::max(1, std::atoi(argv[1]));
  Timer total;

  // Shared sample corpus.
  std::vector<FilteredComplex> samples;
  for (int i = 0; i < per_quiver; ++i)
    samples.push_back(gen_random_cellular(a2(), 1000 + i).fc);
  for (int i = 0; i < per_quiver; ++i)
    samples.push_back(gen_random_cellular(a3(), 2000 + i).fc);

  // Criterion 1: f-category axioms on >= 100 samples, exact.
  {
    Timer t;
    const AxiomReport ar = check_f_axioms(samples);
    std::string detail;
    for (const auto& i : ar.items)
      if (!i.pass) detail = i.name + (i.detail.empty() ? "" : ": " + i.detail);
    std::ostringstream os;
    os << samples.size() << " samples, " << ar.items.size() << " checks, "
       << t.secs() << "s";
    report(1, "f-axioms (1)-(4) hold exactly on seeded cellular samples",
           ar.all_pass(), ar.all_pass() ? os.str() : detail);
  }

  // Criterion 2: gr o s = gr^{-1} and sigma-triangle cone comparisons.
  {
    const AxiomReport ar = check_sigma_gr(samples);
    std::string detail;
    for (const auto& i : ar.items)
      if (!i.pass) detail = i.name;
    report(2, "sigma/gr algebra (shift law + filtered cone comparisons)",
           ar.all_pass(), detail);
  }

  // Criterion 3: omega properties.
  {
    const AxiomReport ar = check_omega_props(samples);
    std::string detail;
    for (const auto& i : ar.items)
      if (!i.pass) detail = i.name;
    report(3, "omega(iota) qis + filtered Hom = derived Hom through omega",
           ar.all_pass(), detail);
  }

  // Criterion 4: compatible t-structure shift law and j-heart membership.
  {
    bool ok = true;
    std::string detail;
    const TStructureSpec std_t = TStructureSpec::standard();
    for (std::size_t i = 0; i < samples.size() && ok; ++i) {
      const FilteredComplex& x = samples[i];
      const FilteredComplex sx = filt_shift_s(x, 1);
      bool shifted_le = true, shifted_ge = true;
      for (int n = sx.gr_lo(); n <= sx.gr_hi(); ++n) {
        if (!in_t_le(gr_complex(sx, n), n - 1, std_t)) shifted_le = false;
        if (!in_t_ge(gr_complex(sx, n), n - 1, std_t)) shifted_ge = false;
      }
      if (shifted_le != cf_t_membership(x, CfSide::le, std_t) ||
          shifted_ge != cf_t_membership(x, CfSide::ge, std_t)) {
        ok = false;
        detail = "s-shift law failed on sample " + std::to_string(i);
      }
    }
    const std::vector<std::pair<Rep, TStructureSpec>> hearts = {
        {s1(), std_t}, {s2(), std_t}, {p1(), std_t},
        {s1(), pos_t()}, {p1(), pos_t()}};
    for (const auto& [m, t] : hearts)
      if (!cf_heart_contains(trivially_filtered(c(m, 0)), t).ok) {
        ok = false;
        detail = "trivially filtered heart object escaped CF^0";
      }
    if (!cf_heart_contains(trivially_filtered(c(s2(), -1)), pos_t()).ok) {
      ok = false;
      detail = "S2[1] escaped CF^0 under the tilt";
    }
    report(4, "compatible t-structure: s-shift law + j is t-exact on hearts",
           ok, detail);
  }

  // Criterion 5: eta round trips on >= 25 fixture heart complexes.
  {
    bool ok = true;
    std::string detail;
    int count = 0;
    const TStructureSpec std_t = TStructureSpec::standard();
    std::vector<HeartObject> std_pool = {
        HeartObject{c(s1(), 0), std_t}, HeartObject{c(s2(), 0), std_t},
        HeartObject{c(p1(), 0), std_t}};
    std::vector<HeartObject> pos_pool = {
        HeartObject{c(s1(), 0), pos_t()}, HeartObject{c(p1(), 0), pos_t()},
        HeartObject{c(s2(), -1), pos_t()}};
    Rng rng(77);
    for (int i = 0; i < 14 && ok; ++i) {
      const HeartComplex k = random_heart_complex(
          std_t, std_pool, rng, 2 + static_cast<int>(rng.range(0, 1)));
      const Tower tw = eta_inverse(k);
      if (!heart_complexes_isomorphic(eta(tw.cell.fc, std_t), k)) {
        ok = false;
        detail = "standard fixture " + std::to_string(i);
      }
      ++count;
    }
    for (int i = 0; i < 14 && ok; ++i) {
      const HeartComplex k = random_heart_complex(
          pos_t(), pos_pool, rng, 2 + static_cast<int>(rng.range(0, 1)));
      const Tower tw = eta_inverse(k);
      if (!heart_complexes_isomorphic(eta(tw.cell.fc, pos_t()), k)) {
        ok = false;
        detail = "tilted fixture " + std::to_string(i);
      }
      ++count;
    }
    report(5, "eta o eta_inverse = id on fixture heart complexes", ok,
           ok ? std::to_string(count) + " fixtures" : detail);
  }

  // Criterion 6: realization contracts.
  {
    bool ok = true;
    std::string detail;
    const TStructureSpec std_t = TStructureSpec::standard();
    auto single = [&](const Complex& v, const TStructureSpec& t) {
      HeartComplex k;
      k.t = t;
      k.lo = 0;
      k.terms.push_back(make_heart_object(v, t));
      return k;
    };
    for (const Rep& m : {s1(), s2(), p1()})
      if (!same_qis_class(real_functor(single(c(m, 0), std_t)), c(m, 0))) {
        ok = false;
        detail = "real([M]) != M (standard)";
      }
    for (const Complex& v : {c(s1(), 0), c(p1(), 0), c(s2(), -1)})
      if (!same_qis_class(real_functor(single(v, pos_t())), v)) {
        ok = false;
        detail = "real([M]) != M (tilt)";
      }
    // Acyclic complexes die.
    {
      HeartComplex k;
      k.t = std_t;
      k.lo = 0;
      k.terms = {make_heart_object(c(p1(), 0), std_t),
                 make_heart_object(c(p1(), 0), std_t)};
      k.diffs = {derived_from_chain(ChainMap::identity(c(p1(), 0)))};
      if (!acyclic(real_functor(k))) {
        ok = false;
        detail = "real of an acyclic complex is nonzero";
      }
    }
    // The flagship extension: real([S1 -> S2[1]]) = P1 under TILT_POS.
    HeartComplex ext;
    ext.t = pos_t();
    ext.lo = 0;
    ext.terms = {make_heart_object(c(s1(), 0), ext.t),
                 make_heart_object(c(s2(), -1), ext.t)};
    ext.diffs = {derived_hom_basis(c(s1(), 0), c(s2(), -1), 0).at(0)};
    const Complex r_ext = real_functor(ext);
    if (!same_qis_class(r_ext, c(p1(), 0))) {
      ok = false;
      detail = "real of the extension complex is not P1";
    }
    // t-exactness on fixtures, all degrees.
    for (int n = -2; n <= 3 && ok; ++n) {
      if (!same_qis_class(cohomology_t(r_ext, n, ext.t).value,
                          heart_complex_cohomology(ext, n).value)) {
        ok = false;
        detail = "H_t^" + std::to_string(n) + "(real) mismatch";
      }
    }
    report(6, "realization contracts (identity on hearts, acyclics, "
              "t-exactness, extension = P1)",
           ok, detail);
  }

  // Criterion 7: equivalence verdicts on the shipped configurations.
  {
    bool ok = true;
    std::string detail;
    auto run = [&](const std::string& name) {
      return run_command("verify-equivalence",
                         parse_config_text(*find_builtin_config(name), name));
    };
    const Report pos = run("a2_tilt_pos");
    if (pos.verdict != "equivalence") {
      ok = false;
      detail = "a2_tilt_pos: " + pos.verdict;
    }
    const Report neg = run("a2_tilt_neg");
    if (neg.verdict != "criterion-fails") {
      ok = false;
      detail = "a2_tilt_neg: " + neg.verdict;
    }
    bool witness_found = false;
    for (const CheckResult& c : neg.checks)
      if (c.name == "criterion/ext2/S1[1]/S2" &&
          c.witness == "dim Hom(S1[1], S2[2]) = 1")
        witness_found = true;
    if (!witness_found) {
      ok = false;
      detail = "a2_tilt_neg: missing exact Ext^2 witness";
    }
    const Report std_rep = run("a2_standard");
    if (std_rep.verdict != "equivalence") {
      ok = false;
      detail = "a2_standard: " + std_rep.verdict;
    }
    report(7, "verdicts: tilt_pos equivalence, tilt_neg criterion-fails "
              "(witness dim 1 at (S1[1], S2, p=2)), standard equivalence",
           ok, detail);
  }

  // Criterion 8: functoriality squares on the shipped a3_subcat probes.
  {
    const Config cfg =
        parse_config_text(*find_builtin_config("a3_subcat"), "a3_subcat");
    const Report rep = run_command("functoriality", cfg);
    bool ok = rep.verdict == "commutes";
    std::string detail;
    for (const CheckResult& c : rep.checks)
      if (c.status != CheckResult::Status::pass) {
        ok = false;
        detail = c.name;
      }
    report(8, "functoriality square commutes on all shipped probes",
           ok, detail);
  }

  // Criterion 9: byte-identical machine reports for fixed config + seed.
  {
    bool ok = true;
    std::string detail;
    for (const std::string name :
         {"a2_standard", "a2_tilt_pos", "a3_subcat"}) {
      const Config cfg = parse_config_text(*find_builtin_config(name), name);
      RunOptions opts;
      opts.samples = 4;
      const std::string r1 =
          run_command("check-axioms", cfg, opts).machine_text();
      const std::string r2 =
          run_command("check-axioms", cfg, opts).machine_text();
      if (r1 != r2) {
        ok = false;
        detail = name;
      }
    }
    report(9, "machine reports are byte-identical across identical runs", ok,
           detail);
  }

  std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: FAILURES PRESENT")
            << " (" << total.secs() << "s)" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
