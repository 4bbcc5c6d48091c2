#pragma once

#include <functional>
#include <tuple>
#include <type_traits>

namespace t11 {

/// Type-erased callable that keeps one std::function per scalar type, so a
/// single generic lambda can be evaluated with doubles and with jets.
template <template <class> class Sig, class... Scalars>
class PolyFunction {
 public:
  PolyFunction() = default;

  template <class F>
    requires(!std::is_same_v<std::decay_t<F>, PolyFunction>)
  explicit PolyFunction(F f) : fns_{std::function<Sig<Scalars>>(f)...} {}

  template <class S>
  const std::function<Sig<S>>& at() const {
    return std::get<std::function<Sig<S>>>(fns_);
  }

  template <class S>
  static constexpr bool supports = (std::is_same_v<S, Scalars> || ...);

  explicit operator bool() const { return static_cast<bool>(std::get<0>(fns_)); }

 private:
  std::tuple<std::function<Sig<Scalars>>...> fns_;
};

}  // namespace t11
