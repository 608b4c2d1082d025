#pragma once

#include "ctg/desc.hpp"
#include "ctg/errors.hpp"
#include "ctg/game.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctg {

struct Defaults {
  static constexpr std::size_t depth = 8;
  static constexpr std::size_t budget = 16;
  static constexpr std::uint64_t fuel = 10000;
};

struct WinningCert {
  enum class Prov : std::uint8_t { None, ByConstruction, BoundedCheck };
  bool total = false;
  bool innocent = false;
  bool noetherian = false;
  Prov prov = Prov::None;

  static WinningCert winning() { return {true, true, true, Prov::ByConstruction}; }
  static WinningCert none() { return {}; }
};

WinningCert meet(const WinningCert& x, const WinningCert& y);

// A deterministic game given by P's next-move function on odd positions.
class SkeletonImpl {
 public:
  SkeletonImpl(GameExpr game, Desc desc, WinningCert cert);
  virtual ~SkeletonImpl() = default;
  SkeletonImpl(const SkeletonImpl&) = delete;
  SkeletonImpl& operator=(const SkeletonImpl&) = delete;

  // P's response at an odd position; memoized.
  std::optional<Occ> next(const JSeq& s) const;
  virtual std::vector<Occ> o_extensions(const JSeq& s, std::size_t budget) const;
  // Whether a scripted O-move is acceptable at even position s.
  virtual bool o_move_ok(const JSeq& s, const Occ& o) const;

  const GameExpr& game() const { return game_; }
  Arena arena() const { return arena_of(game_); }
  Desc desc() const { return desc_; }
  const WinningCert& cert() const { return cert_; }

 protected:
  virtual std::optional<Occ> respond(const JSeq& s) const = 0;

 private:
  GameExpr game_;
  Desc desc_;
  WinningCert cert_;
  mutable std::mutex mu_;
  mutable std::unordered_map<JSeq, std::optional<Occ>> memo_;
};
using TSkeleton = std::shared_ptr<const SkeletonImpl>;

using RespondFn = std::function<std::optional<Occ>(const JSeq&)>;

class FnSkeleton : public SkeletonImpl {
 public:
  FnSkeleton(GameExpr game, Desc desc, WinningCert cert, RespondFn fn)
      : SkeletonImpl(std::move(game), desc, cert), fn_(std::move(fn)) {}

 protected:
  std::optional<Occ> respond(const JSeq& s) const override { return fn_(s); }

 private:
  RespondFn fn_;
};

TSkeleton make_skeleton(GameExpr game, Desc desc, WinningCert cert, RespondFn fn);

// Skeletons are shared per description: the factory runs once per Desc.
TSkeleton intern_skeleton(Desc d, const std::function<TSkeleton()>& factory);

using SkeletonBuilder = std::function<TSkeleton(Desc)>;
void register_skeleton_builder(const std::string& head, SkeletonBuilder b);
// Registers every module's builders (idempotent).
void ensure_builders();
// Rebuilds a skeleton from its description; throws NoDescription.
TSkeleton build_skeleton(Desc d);

// Drives σ against scripted O-moves; stops early (odd length) if P is stuck.
JSeq play(const TSkeleton& sigma, const std::vector<Occ>& script);

struct WinningReport {
  bool total = true;
  bool innocent = true;
  bool noetherian = true;
  std::size_t depth = 0;
  std::size_t positions = 0;
  std::optional<JSeq> witness;  // first failing odd position
  std::string label() const;    // "verified-to-depth d: ..."
};
WinningReport check_winning(const TSkeleton& sigma, std::size_t depth, std::size_t budget = Defaults::budget);

struct EqVerdict {
  bool equal = true;
  std::size_t depth = 0;
  std::size_t positions = 0;
  std::optional<JSeq> witness;
  std::string detail;
  std::string text() const;  // "equal-to-depth d" or "distinct(...)"
};
// ≡_d: bounded extensional equality of P's responses over O-extensions of `a`.
EqVerdict play_equal(const TSkeleton& a, const TSkeleton& b, std::size_t depth = Defaults::depth,
                     std::size_t budget = Defaults::budget);

// Odd positions reachable by alternating O-extensions and P's responses.
std::vector<JSeq> odd_positions(const TSkeleton& sigma, std::size_t depth, std::size_t budget, std::size_t limit);

}  // namespace ctg
