#pragma once

// Real-time multi-tape machines with an enforced step budget, and the
// recognizers built on them:
//
//   LsharpMachine  the two-tape recognizer of L_2^# (positive quadrant of Z^2
//                  minus powers of b),
//   L2PlusMachine  L_2^# together with b^*,
//   L2Machine      all four quadrants through sign relabelling,
//   LnMachine      L_n through sign trackers and pairwise projections.
//
// A machine consumes exactly one input letter per feed() call. Each work tape
// may be written at most once and moved at most one cell per call; exceeding
// that throws RealTimeViolation.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtcomb/words.hpp"

namespace rtcomb {

class RealTimeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum CellFlag : std::uint8_t {
  kLeftEnd = 1 << 0,
  kRightEnd = 1 << 1,
  kMarkLeft = 1 << 2,   // permanent mark, consulted while moving left
  kMarkRight = 1 << 3,  // permanent mark, consulted while moving right
  kTemp = 1 << 4,       // temporary mark
};

// A tape cell: base symbol (0 is blank) plus mark bits.
struct Cell {
  std::uint8_t symbol = 0;
  std::uint8_t flags = 0;

  bool blank() const noexcept { return symbol == 0 && flags == 0; }
  bool has(std::uint8_t flag) const noexcept { return (flags & flag) != 0; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Bi-infinite tape with a single head. write() and move() are counted per
// step; begin_step() resets the counters.
class Tape {
 public:
  Tape();

  const Cell& read() const;
  void write(Cell cell);
  void move(int direction);
  void begin_step() noexcept;

  std::int64_t head() const noexcept { return head_; }
  int step_moves() const noexcept { return step_moves_; }
  int step_writes() const noexcept { return step_writes_; }
  int last_direction() const noexcept { return last_direction_; }

  // Inspection only; not part of the machine's computation.
  Cell at(std::int64_t position) const;
  // Non-blank cells from the leftmost to the rightmost written position,
  // together with the position of the first one.
  std::vector<Cell> contents(std::int64_t* first_position = nullptr) const;

 private:
  std::size_t index(std::int64_t position);

  std::vector<Cell> cells_;
  std::int64_t origin_ = 0;  // tape position of cells_[0]
  std::int64_t head_ = 0;
  int step_moves_ = 0;
  int step_writes_ = 0;
  int last_direction_ = 0;
};

struct TraceStep {
  Letter input;
  std::vector<int> moves;   // -1, 0 or +1 per work tape
  std::vector<int> writes;  // 0 or 1 per work tape
  std::string control_state;
  bool repositioning = false;  // a head moved to prepare the next configuration
};

struct TraceSummary {
  std::size_t steps = 0;
  std::size_t work_tapes = 0;
  int max_moves_per_tape = 0;
  int max_writes_per_tape = 0;
  std::size_t repositioning_steps = 0;
};

class RtTrace {
 public:
  bool record_steps = false;
  std::vector<TraceStep> steps;
  TraceSummary summary;
};

class RealTimeMachine {
 public:
  virtual ~RealTimeMachine() = default;

  // Consumes one letter: resets the step counters of every work tape, runs
  // the transition and updates the trace.
  void feed(Letter letter);
  // Runs the transition only. Composite machines call this on their parts
  // inside their own feed().
  virtual void advance(Letter letter) = 0;

  virtual bool accepting() const = 0;
  // No continuation of the input read so far can be accepted.
  virtual bool dead() const = 0;
  virtual std::string control_state() const = 0;
  virtual bool repositioned() const { return false; }
  virtual std::vector<Tape*> work_tapes() = 0;
  virtual std::size_t alphabet_size() const = 0;

  std::size_t consumed() const noexcept { return consumed_; }
  // Position of the letter that made the machine dead, if any.
  std::optional<std::size_t> died_at() const noexcept { return died_at_; }
  const RtTrace& trace() const noexcept { return trace_; }
  void record_steps(bool on) { trace_.record_steps = on; }

 private:
  std::size_t consumed_ = 0;
  std::optional<std::size_t> died_at_;
  RtTrace trace_;
};

// What the L_2^# machine holds at a recursion level: the two tape roles, the
// words they spell once the pair held in finite control is appended, and the
// case marks on the w_j tape (indices into w_j).
struct DistinguishedConfig {
  std::size_t level = 0;       // j
  std::size_t wj_tape = 0;     // index of the tape holding w_j
  std::size_t wprev_tape = 0;  // index of the tape holding w_{j-1}
  std::vector<std::uint8_t> wj;     // over {0 = a, 1 = b}
  std::vector<std::uint8_t> wprev;  // over {0 = a, 1 = b}
  std::optional<std::size_t> mark_from_left;
  std::optional<std::size_t> mark_from_right;  // counted from the right end of w_j
};

class LsharpMachine final : public RealTimeMachine {
 public:
  LsharpMachine();

  void advance(Letter letter) override;
  bool accepting() const override;
  bool dead() const override { return phase_ == Phase::kDead; }
  std::string control_state() const override;
  bool repositioned() const override { return repositioned_; }
  std::vector<Tape*> work_tapes() override { return {&tapes_[0], &tapes_[1]}; }
  std::size_t alphabet_size() const override { return 2; }

  // Meaningful once the machine has entered level 1; nullopt before.
  std::optional<DistinguishedConfig> config() const;
  // True right after a transition into a new level.
  bool at_level_entry() const noexcept { return at_entry_; }
  std::size_t level() const noexcept { return level_; }

 private:
  enum class Phase : std::uint8_t { kStart, kRun, kAfterD, kLevel, kDead };
  enum class Sub : std::uint8_t { kCore, kPair1, kPair2 };

  void die();
  void step_level(std::uint8_t u);
  void enter_level(bool first);
  std::uint8_t active_kind(int direction) const noexcept {
    return direction > 0 ? kMarkRight : kMarkLeft;
  }

  Tape tapes_[2];
  Phase phase_ = Phase::kStart;
  bool swap_ = false;
  bool last_is_a_ = false;
  bool candidate_ = false;  // the consumed prefix is a member if it ends in a
  bool repositioned_ = false;
  bool at_entry_ = false;
  bool run_wrote_ = false;

  // Level state.
  std::size_t level_ = 0;
  std::uint8_t x_ = 1, y_ = 2;  // last two letters of w_j, internal symbols
  int cmp_ = 0, wr_ = 1;
  int cmp_dir_ = -1, wr_dir_ = 1;
  bool cmp_empty_ = false;
  bool wr_blank_ = true;  // nothing written yet on the write tape
  Sub sub_ = Sub::kCore;
  bool deeper_path_ = false;
  bool first_block_ = true;
  bool seen_temp_ = false;
  bool seen_active_ = false;
  bool pending_old_mark_ = false;
  int block_step_ = 0;  // saturates at 2
  std::uint8_t hist_[2] = {0, 0};  // hist_[1] is the previous input, hist_[0] the one before
};

class L2PlusMachine final : public RealTimeMachine {
 public:
  void advance(Letter letter) override;
  bool accepting() const override { return all_b_ || core_.accepting(); }
  bool dead() const override { return !all_b_ && core_.dead(); }
  std::string control_state() const override;
  bool repositioned() const override { return core_.repositioned(); }
  std::vector<Tape*> work_tapes() override { return core_.work_tapes(); }
  std::size_t alphabet_size() const override { return 2; }

 private:
  LsharpMachine core_;
  bool all_b_ = true;
};

class L2Machine final : public RealTimeMachine {
 public:
  L2Machine();
  void advance(Letter letter) override;
  bool accepting() const override;
  bool dead() const override;
  std::string control_state() const override;
  bool repositioned() const override;
  std::vector<Tape*> work_tapes() override;
  std::size_t alphabet_size() const override { return 2; }

 private:
  // Quadrant q has sign -1 on coordinate i when bit i of q is set.
  std::unique_ptr<L2PlusMachine> quadrants_[4];
  bool alive_[4] = {true, true, true, true};
};

class LnMachine final : public RealTimeMachine {
 public:
  explicit LnMachine(std::size_t n);
  void advance(Letter letter) override;
  bool accepting() const override;
  bool dead() const override;
  std::string control_state() const override;
  bool repositioned() const override;
  std::vector<Tape*> work_tapes() override;
  std::size_t alphabet_size() const override { return n_; }

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::vector<std::int8_t> sign_;
  bool sign_conflict_ = false;
  std::vector<std::unique_ptr<L2PlusMachine>> pairs_;
};

enum class Language { kLsharp, kL2Plus, kL2, kLn };

std::unique_ptr<RealTimeMachine> make_recognizer(Language language, std::size_t n = 2);

// Single-pass input: each letter is handed out once, in order.
class LetterStream {
 public:
  explicit LetterStream(LetterSpan letters) : letters_(letters) {}
  std::optional<Letter> next();
  std::size_t requests() const noexcept { return requests_; }

 private:
  LetterSpan letters_;
  std::size_t position_ = 0;
  std::size_t requests_ = 0;
};

struct Recognition {
  bool accepted = false;
  std::size_t reject_position = 0;  // meaningful when !accepted
  TraceSummary summary;
};

Recognition run(RealTimeMachine& machine, LetterStream& input);
Recognition recognize(Language language, LetterSpan letters, std::size_t n = 2);
Recognition recognize_lsharp(LetterSpan letters);
Recognition recognize_l2plus(LetterSpan letters);
Recognition recognize_l2(LetterSpan letters);
Recognition recognize_ln(LetterSpan letters, std::size_t n);

}  // namespace rtcomb
