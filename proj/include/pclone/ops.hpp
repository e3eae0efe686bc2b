#pragma once

// The function algebra on partial Boolean functions: general composition
// with the standard domain rule, the five one-step operations (cyclic
// shift, transposition, identification, dummy argument, substitution into
// the first argument), restriction closure, first-argument pinning, and a
// bounded-arity clone closure.

#include <cstdint>
#include <string>
#include <vector>

#include "pclone/core.hpp"
#include "pclone/fingerprint.hpp"

namespace pclone {

struct GeneratorSet {
  std::string name;
  std::vector<PartialFunction> members;
};

// F = f(g_1,...,g_n) where f is n-ary and all g_i share arity m.
// dom F = { x in the common domain of the g_i | (g_1(x),...,g_n(x)) in dom f }.
PartialFunction compose(const PartialFunction& f,
                        const std::vector<PartialFunction>& gs);

// (zeta f)(x_1,...,x_n) = f(x_2,...,x_n,x_1); identity for n = 1.
PartialFunction zeta(const PartialFunction& f);
// (tau f)(x_1,...,x_n) = f(x_2,x_1,x_3,...,x_n); identity for n = 1.
PartialFunction tau(const PartialFunction& f);
// (delta f)(x_1,...,x_{n-1}) = f(x_1,x_1,x_2,...,x_{n-1}); identity for n = 1.
PartialFunction delta(const PartialFunction& f);
// (nabla f)(x_1,...,x_{n+1}) = f(x_2,...,x_{n+1}).
PartialFunction nabla(const PartialFunction& f);
// (f * g)(x_1,...,x_{n+m-1}) = f(g(x_1,...,x_m), x_{m+1},...,x_{n+m-1}).
PartialFunction star(const PartialFunction& f, const PartialFunction& g);

// f_a of arity n+1: defined exactly on {a} x dom f with f_a(a,x) = f(x).
PartialFunction pin_first(const PartialFunction& f, bool a);

// All restrictions of all members (including the members themselves and
// the empty functions of their arities). Refuses if the output would
// exceed max_outputs. Result is sorted and duplicate-free.
std::vector<PartialFunction> str_closure(const std::vector<PartialFunction>& fs,
                                         std::uint64_t max_outputs = 1u << 20);

// Least set of functions of arity <= k containing the projections of
// arity <= k and the generators of arity <= k, closed under zeta, tau,
// delta, nabla and * whenever the result arity stays <= k.
//
// Truncation semantics: results (and generators) of arity above k are
// discarded, so clone members derivable only through higher arities can
// be missing. The bound is part of the reported object, not an
// approximation flag.
CloneFingerprint clone_closure_bounded(const GeneratorSet& gen, int k,
                                       std::uint64_t max_members = 1u << 21);

}  // namespace pclone
