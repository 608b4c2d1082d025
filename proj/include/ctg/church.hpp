#pragma once

#include "ctg/cwf.hpp"

#include <string>
#include <vector>

namespace ctg {

// T over (N & N) & N: 1 at ⟨⟨ē, n̄⟩, c̄⟩ iff t_pred(e, n, c), otherwise 0.
DepType t_family();
Ctx t_base();
// U : Π(x:N) N, extension n ↦ u_extract(n).
Tm u_morphism();

// The interpreted formula Π(f:N⇒N) Σ(x:N) Π(y:N) Σ(z:N) (T(x, y, z) & Id_N(U z, f y)).
struct CtType {
  Ty f, x, y, z;  // binder types, each over the context holding the previous ones
  Ty t, id;       // T(x, y, z) and Id_N(U z, f y) over 1.f.x.y.z
  Ty body;        // T & Id
  Ty ct;          // the closed type
};
const CtType& ct_type();

// λf. ⟨ e‡, λy. ⟨ code of the run of e‡ on y, ⟨⊤, ⊤⟩ ⟩ ⟩
Tm ct_term();

// Realizer translation: e‡ for O's realizer of a point f† of !̂(!̂N ⇛ N).
Nat ct_dagger_code(const Nat& e);

struct CtSample {
  std::string name;
  Do f;
};
std::vector<CtSample> ct_samples();  // succ, double, identity, const 7

struct CtProbe {
  Nat n, c, u, expected;
  bool t_ok = false;
  bool fibers_one = false;
  bool played_ok = false;  // the same c answered in an explicit play
};
struct CtSampleReport {
  std::string name;
  Nat e, e_dagger;
  bool echo_ok = false;           // first projection answers e‡ without touching f
  std::size_t moves_before_echo = 0;
  std::vector<CtProbe> probes;
  bool ok() const;
};
struct CtReport {
  std::vector<CtSampleReport> samples;
  bool total = false;            // bounded winning check of ⊎ct over typed O-behaviour
  std::string total_label;
  bool realizes_ok = false;      // canon(⊎ct) realizes ⊎ct
  std::string realizes_label;
  bool empty_has_no_winner = false;  // the sole skeleton on 0 is not total
  bool ok() const;
  std::string text() const;  // one line per sample
};
CtReport validate_ct(const std::vector<CtSample>& samples, std::size_t max_n = 10, std::size_t depth = Defaults::depth,
                     std::size_t realize_probes = 30);

void register_church_builders();

}  // namespace ctg
