#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sketchforge/completion.hpp"
#include "sketchforge/functor.hpp"
#include "sketchforge/sketch.hpp"

namespace sketchforge {

struct BuiltinParams {
  std::size_t trunc = 3;  // largest ordinal or finite set index kept
  std::size_t m = 1;      // loop degree, delta_loop only
};

/// Two objects b1, b2; three arrows phi1, phi2, mu: b2 -> b1; one cone on b2
/// with legs phi1, phi2. Sorted as (s) -> b1, (s,s) -> b2.
Sketch builtin_binary();

/// Pointed finite sets [0..N] with basepoint-preserving maps; cones alpha^n
/// with indicator legs and the 0-fold cone on [0]. Sorted as s^n -> [n].
Sketch builtin_gamma(std::size_t n);

/// Truncated opposite simplex category with cones indexed by the strictly
/// increasing maps [m] -> [k] fixing 0, in lexicographic order. Sorted only
/// when m = 1.
Sketch builtin_delta_loop(std::size_t n, std::size_t m);

/// Truncated opposite simplex category times the arrow category i0 -> i1 with
/// the alpha, beta and gamma cones. Unsorted.
Sketch builtin_prezma(std::size_t n);

/// Dispatch by CLI name: binary, gamma, delta-loop (or delta_loop), prezma.
Sketch builtin(const std::string& name, const BuiltinParams& params);
std::vector<std::string> builtin_names();

/// A free semi-theory presenting the operations of a builtin together with
/// its interpretation in the builtin, which sends cones to cones.
///   binary: the builtin itself, read as free.
///   gamma:  e: () -> s and m: (s,s) -> s; needs trunc >= 2.
///   prezma: sorts M, X with e: () -> M, m: (M,M) -> M, act: (X,M) -> X;
///           needs trunc >= 2.
struct BuiltinSignature {
  FreeSemiTheory theory;
  Sketch target;
  Functor interpretation;
};
BuiltinSignature builtin_signature(const std::string& name, const BuiltinParams& params);

/// Names used by the builtins, exposed for tests.
std::string ordinal_name(std::size_t n);  // "[n]"
std::string gamma_morphism_name(std::size_t from, std::size_t to, const std::vector<std::size_t>& values);
/// The opposite-simplex morphism [to] -> [from] induced by the monotone map
/// values: [from] -> [to].
std::string delta_op_morphism_name(std::size_t from, std::size_t to, const std::vector<std::size_t>& values);

}  // namespace sketchforge
