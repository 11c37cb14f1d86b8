#include "rtcomb/rt_machine.hpp"

#include <algorithm>

namespace rtcomb {

namespace {

constexpr std::uint8_t kSymA = 1;  // the letter the input starts with
constexpr std::uint8_t kSymB = 2;

std::uint8_t end_flag(int direction) { return direction > 0 ? kRightEnd : kLeftEnd; }
std::uint8_t start_flag(int direction) { return direction > 0 ? kLeftEnd : kRightEnd; }

}  // namespace

// ---------------------------------------------------------------------------
// Tape

Tape::Tape() : cells_(16), origin_(-8) {}

const Cell& Tape::read() const {
  static const Cell blank;
  const std::int64_t i = head_ - origin_;
  if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return blank;
  return cells_[static_cast<std::size_t>(i)];
}

std::size_t Tape::index(std::int64_t position) {
  if (position < origin_) {
    const auto grow = std::max<std::int64_t>(origin_ - position, static_cast<std::int64_t>(cells_.size()));
    cells_.insert(cells_.begin(), static_cast<std::size_t>(grow), Cell{});
    origin_ -= grow;
  }
  const std::int64_t i = position - origin_;
  if (i >= static_cast<std::int64_t>(cells_.size())) {
    cells_.resize(std::max<std::size_t>(static_cast<std::size_t>(i) + 1, 2 * cells_.size()));
  }
  return static_cast<std::size_t>(i);
}

void Tape::write(Cell cell) {
  if (step_writes_ >= 1) throw RealTimeViolation("work tape written twice in one step");
  ++step_writes_;
  cells_[index(head_)] = cell;
}

void Tape::move(int direction) {
  if (direction == 0) return;
  if (direction != 1 && direction != -1) throw RealTimeViolation("head moved more than one cell");
  if (step_moves_ >= 1) throw RealTimeViolation("head moved twice in one step");
  ++step_moves_;
  head_ += direction;
  last_direction_ = direction;
}

void Tape::begin_step() noexcept {
  step_moves_ = 0;
  step_writes_ = 0;
  last_direction_ = 0;
}

Cell Tape::at(std::int64_t position) const {
  const std::int64_t i = position - origin_;
  if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return Cell{};
  return cells_[static_cast<std::size_t>(i)];
}

std::vector<Cell> Tape::contents(std::int64_t* first_position) const {
  auto first = std::find_if(cells_.begin(), cells_.end(), [](const Cell& c) { return !c.blank(); });
  if (first == cells_.end()) {
    if (first_position) *first_position = head_;
    return {};
  }
  auto last = std::find_if(cells_.rbegin(), cells_.rend(), [](const Cell& c) { return !c.blank(); }).base();
  if (first_position) *first_position = origin_ + (first - cells_.begin());
  return {first, last};
}

// ---------------------------------------------------------------------------
// RealTimeMachine

void RealTimeMachine::feed(Letter letter) {
  if (letter.symbol >= alphabet_size() || (letter.sign != 1 && letter.sign != -1)) {
    throw std::invalid_argument("symbol outside the machine's alphabet");
  }
  auto tapes = work_tapes();
  for (Tape* t : tapes) t->begin_step();
  const bool was_dead = dead();
  advance(letter);
  if (!was_dead && dead()) died_at_ = consumed_;
  ++consumed_;

  auto& summary = trace_.summary;
  ++summary.steps;
  summary.work_tapes = tapes.size();
  for (const Tape* t : tapes) {
    summary.max_moves_per_tape = std::max(summary.max_moves_per_tape, t->step_moves());
    summary.max_writes_per_tape = std::max(summary.max_writes_per_tape, t->step_writes());
  }
  const bool moved_for_setup = repositioned();
  if (moved_for_setup) ++summary.repositioning_steps;
  if (trace_.record_steps) {
    TraceStep step;
    step.input = letter;
    for (const Tape* t : tapes) {
      step.moves.push_back(t->last_direction());
      step.writes.push_back(t->step_writes());
    }
    step.control_state = control_state();
    step.repositioning = moved_for_setup;
    trace_.steps.push_back(std::move(step));
  }
}

// ---------------------------------------------------------------------------
// LsharpMachine
//
// Internally the input is relabelled so that it starts with A; c = A and
// d = B below. At level j the comparison tape holds the palindrome P_j (w_j
// without its last two letters x y, which live in finite control), and the
// other tape holds P_{j-1}. Input blocks are P_j followed by y x (a Phi(w_j)
// block: stay at level j) or x y (a w_j block: go to level j + 1). Because
// P_j is a palindrome the comparison head simply sweeps back and forth.
//
// While reading level j the write tape is extended by y x P_j per block,
// which turns P_{j-1} into P_{j+1} = P_{j-1} (y x P_j)^{i_{j+1}}. The x of
// every block carries a temporary mark; the first pass over the new tape
// keeps the one nearest its far end as a permanent mark and deletes the rest.

LsharpMachine::LsharpMachine() = default;

void LsharpMachine::die() {
  phase_ = Phase::kDead;
  candidate_ = false;
}

void LsharpMachine::advance(Letter letter) {
  repositioned_ = false;
  at_entry_ = false;
  if (phase_ == Phase::kDead) return;
  if (letter.sign != 1) {
    die();
    return;
  }
  const bool is_a = letter.symbol == 0;
  last_is_a_ = is_a;
  if (phase_ == Phase::kStart) swap_ = !is_a;
  const std::uint8_t u = (is_a != swap_) ? kSymA : kSymB;

  Tape& first_tape = tapes_[0];
  switch (phase_) {
    case Phase::kStart:
      // w_0 = c is not stored; the tape will hold c^{i_1 - 1}.
      phase_ = Phase::kRun;
      candidate_ = true;
      break;
    case Phase::kRun:
      if (u == kSymA) {
        first_tape.write(Cell{kSymA, static_cast<std::uint8_t>(run_wrote_ ? 0 : kLeftEnd)});
        first_tape.move(+1);
        run_wrote_ = true;
      } else {
        if (run_wrote_) first_tape.move(-1);
        phase_ = Phase::kAfterD;
      }
      candidate_ = true;
      break;
    case Phase::kAfterD:
      if (u != kSymA) {
        die();
        break;
      }
      if (run_wrote_) {
        Cell cell = first_tape.read();
        cell.flags |= kRightEnd;
        first_tape.write(cell);
      }
      enter_level(true);
      candidate_ = true;
      break;
    case Phase::kLevel:
      step_level(u);
      break;
    case Phase::kDead:
      break;
  }
  hist_[0] = hist_[1];
  hist_[1] = u;
}

void LsharpMachine::enter_level(bool first) {
  if (first) {
    level_ = 1;
    cmp_ = 0;
    cmp_dir_ = -1;
    cmp_empty_ = !run_wrote_;
    wr_ = 1;
    wr_dir_ = +1;
    wr_blank_ = true;
    x_ = kSymA;
    y_ = kSymB;
  } else {
    ++level_;
    const int old_cmp = cmp_;
    const int old_cmp_dir = cmp_dir_;
    const bool old_cmp_empty = cmp_empty_;
    cmp_ = wr_;
    cmp_dir_ = -wr_dir_;
    cmp_empty_ = false;
    wr_ = old_cmp;
    wr_dir_ = old_cmp_dir;
    wr_blank_ = old_cmp_empty;
    std::swap(x_, y_);
  }
  phase_ = Phase::kLevel;
  sub_ = cmp_empty_ ? Sub::kPair1 : Sub::kCore;
  deeper_path_ = false;
  first_block_ = true;
  seen_temp_ = false;
  seen_active_ = false;
  pending_old_mark_ = false;
  block_step_ = 0;
  at_entry_ = true;
}

void LsharpMachine::step_level(std::uint8_t u) {
  candidate_ = false;
  const int s = block_step_;
  bool schedule_old_mark = false;
  bool complete_phi = false;
  bool go_deeper = false;

  // Comparison tape.
  Tape& cmp = tapes_[cmp_];
  switch (sub_) {
    case Sub::kCore: {
      const Cell cell = cmp.read();
      if (cell.symbol != u) {
        die();
        return;
      }
      const std::uint8_t active = active_kind(cmp_dir_);
      const std::uint8_t far = active == kMarkRight ? kMarkLeft : kMarkRight;
      Cell updated = cell;
      bool at_active = false;
      if (level_ >= 2 && first_block_) {
        // First pass: settle the marks written during the previous level.
        const bool temp = updated.has(kTemp);
        updated.flags &= static_cast<std::uint8_t>(~(kTemp | far));
        if (temp && !seen_temp_) {
          updated.flags |= far;
          seen_temp_ = true;
        }
        if (updated.has(active)) {
          if (seen_active_) {
            updated.flags &= static_cast<std::uint8_t>(~active);
          } else {
            seen_active_ = true;
            at_active = true;
          }
        }
      } else if (level_ >= 2) {
        at_active = cell.has(active);
      }
      if (updated != cell) cmp.write(updated);
      if (at_active) {
        candidate_ = true;  // the input would be w_j^n
        schedule_old_mark = first_block_;
      }
      if (cell.has(end_flag(cmp_dir_))) {
        sub_ = Sub::kPair1;
      } else {
        cmp.move(cmp_dir_);
      }
      break;
    }
    case Sub::kPair1:
      // At level 1 the mark position is the first pair letter itself.
      if (level_ == 1) schedule_old_mark = first_block_;
      if (u == y_) {
        deeper_path_ = false;
        if (level_ == 1) candidate_ = true;
      } else {
        deeper_path_ = true;
        if (!cmp_empty_) {
          // Possibly the last block of this level: free the end cell and step
          // outward so the head is in place to extend this tape next level.
          Cell cell = cmp.read();
          cell.flags &= static_cast<std::uint8_t>(~end_flag(cmp_dir_));
          cmp.write(cell);
          cmp.move(cmp_dir_);
          repositioned_ = true;
        }
      }
      sub_ = Sub::kPair2;
      break;
    case Sub::kPair2:
      if (u != (deeper_path_ ? y_ : x_)) {
        die();
        return;
      }
      (deeper_path_ ? go_deeper : complete_phi) = true;
      break;
  }

  // Write tape: y, x, then the block's letters delayed by two steps.
  if (!(level_ == 1 && first_block_ && s == 0)) {
    Tape& wr = tapes_[wr_];
    Cell cell;
    cell.symbol = s == 0 ? y_ : s == 1 ? x_ : hist_[0];
    if (s == 1) cell.flags |= kTemp;
    if (pending_old_mark_) cell.flags |= wr_dir_ > 0 ? kMarkLeft : kMarkRight;
    if (wr_blank_) {
      cell.flags |= start_flag(wr_dir_);
      wr_blank_ = false;
    }
    if (go_deeper) cell.flags |= end_flag(wr_dir_);
    wr.write(cell);
    if (!go_deeper) wr.move(wr_dir_);
  }
  pending_old_mark_ = schedule_old_mark;

  if (complete_phi) {
    candidate_ = true;
    cmp_dir_ = -cmp_dir_;
    sub_ = cmp_empty_ ? Sub::kPair1 : Sub::kCore;
    first_block_ = false;
    block_step_ = 0;
  } else if (go_deeper) {
    enter_level(false);
    candidate_ = true;
  } else {
    block_step_ = std::min(s + 1, 2);
  }
}

bool LsharpMachine::accepting() const {
  return phase_ != Phase::kDead && phase_ != Phase::kStart && candidate_ && last_is_a_;
}

std::string LsharpMachine::control_state() const {
  switch (phase_) {
    case Phase::kStart:
      return "start";
    case Phase::kRun:
      return "run";
    case Phase::kAfterD:
      return "after-d";
    case Phase::kDead:
      return "dead";
    case Phase::kLevel:
      break;
  }
  std::string out = "L" + std::to_string(level_);
  out += sub_ == Sub::kCore ? ":core" : sub_ == Sub::kPair1 ? ":pair1" : deeper_path_ ? ":pair2-w" : ":pair2-phi";
  out += cmp_dir_ > 0 ? ":>" : ":<";
  if (first_block_) out += ":first";
  if (candidate_) out += ":cand";
  return out;
}

std::optional<DistinguishedConfig> LsharpMachine::config() const {
  if (phase_ != Phase::kLevel || !at_entry_) return std::nullopt;
  auto external = [&](std::uint8_t internal) -> std::uint8_t {
    const bool is_c = internal == kSymA;
    return static_cast<std::uint8_t>(is_c == !swap_ ? 0 : 1);
  };

  DistinguishedConfig cfg;
  cfg.level = level_;
  cfg.wj_tape = static_cast<std::size_t>(cmp_);
  cfg.wprev_tape = static_cast<std::size_t>(wr_);

  std::int64_t first = 0;
  const auto core = tapes_[cmp_].contents(&first);
  for (const Cell& c : core) cfg.wj.push_back(external(c.symbol));
  cfg.wj.push_back(external(x_));
  cfg.wj.push_back(external(y_));

  if (level_ == 1) {
    cfg.wprev.push_back(external(kSymA));
    return cfg;
  }
  for (const Cell& c : tapes_[wr_].contents()) cfg.wprev.push_back(external(c.symbol));
  cfg.wprev.push_back(external(y_));
  cfg.wprev.push_back(external(x_));

  // The head sits on the far end, where the first pass starts. The mark
  // nearest the old end is already permanent; the one nearest the far end is
  // still the first temporary mark seen from the far end.
  const std::int64_t size = static_cast<std::int64_t>(core.size());
  const std::int64_t head = tapes_[cmp_].head() - first;
  const int inward = head == 0 && size > 1 ? +1 : -1;
  const std::uint8_t old_kind = inward < 0 ? kMarkLeft : kMarkRight;
  std::optional<std::int64_t> old_mark;
  std::optional<std::int64_t> far_mark;
  for (std::int64_t k = 0; k < size; ++k) {
    const std::int64_t i = inward < 0 ? size - 1 - k : k;
    const Cell& c = core[static_cast<std::size_t>(i)];
    if (!old_mark && c.has(old_kind)) old_mark = i;
    if (!far_mark && c.has(kTemp)) far_mark = i;
  }
  const auto from_left = inward < 0 ? old_mark : far_mark;
  const auto from_right_index = inward < 0 ? far_mark : old_mark;
  if (from_left) cfg.mark_from_left = static_cast<std::size_t>(*from_left);
  if (from_right_index) cfg.mark_from_right = static_cast<std::size_t>(size - 1 - *from_right_index);
  return cfg;
}

// ---------------------------------------------------------------------------
// Composite recognizers

void L2PlusMachine::advance(Letter letter) {
  if (letter.sign != 1 || letter.symbol != 1) all_b_ = false;
  core_.advance(letter);
}

std::string L2PlusMachine::control_state() const {
  return core_.control_state() + (all_b_ ? "+b*" : "");
}

L2Machine::L2Machine() {
  for (auto& q : quadrants_) q = std::make_unique<L2PlusMachine>();
}

void L2Machine::advance(Letter letter) {
  for (unsigned q = 0; q < 4; ++q) {
    if (!alive_[q]) continue;
    const std::int8_t expected = (q >> letter.symbol) & 1u ? -1 : 1;
    if (letter.sign != expected) {
      alive_[q] = false;
      continue;
    }
    quadrants_[q]->advance(Letter{letter.symbol, 1});
  }
}

bool L2Machine::accepting() const {
  for (unsigned q = 0; q < 4; ++q) {
    if (alive_[q] && quadrants_[q]->accepting()) return true;
  }
  return false;
}

bool L2Machine::dead() const {
  for (unsigned q = 0; q < 4; ++q) {
    if (alive_[q] && !quadrants_[q]->dead()) return false;
  }
  return true;
}

std::string L2Machine::control_state() const {
  std::string out;
  for (unsigned q = 0; q < 4; ++q) {
    if (q) out += ';';
    out += alive_[q] ? quadrants_[q]->control_state() : "x";
  }
  return out;
}

bool L2Machine::repositioned() const {
  for (const auto& q : quadrants_) {
    if (q->repositioned()) return true;
  }
  return false;
}

std::vector<Tape*> L2Machine::work_tapes() {
  std::vector<Tape*> out;
  for (auto& q : quadrants_) {
    for (Tape* t : q->work_tapes()) out.push_back(t);
  }
  return out;
}

LnMachine::LnMachine(std::size_t n) : n_(n), sign_(n, 0) {
  if (n == 0) throw std::invalid_argument("L_n needs n >= 1");
  for (std::size_t k = 0; k < n * (n - 1) / 2; ++k) pairs_.push_back(std::make_unique<L2PlusMachine>());
}

std::size_t LnMachine::pair_index(std::size_t i, std::size_t j) const {
  // Row-major index of (i, j), i < j, in the strict upper triangle.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

void LnMachine::advance(Letter letter) {
  if (sign_conflict_) return;
  auto& sign = sign_[letter.symbol];
  if (sign == 0) sign = letter.sign;
  if (sign != letter.sign) {
    sign_conflict_ = true;
    return;
  }
  const std::size_t s = letter.symbol;
  for (std::size_t other = 0; other < n_; ++other) {
    if (other == s) continue;
    const bool first = s < other;
    const std::size_t k = first ? pair_index(s, other) : pair_index(other, s);
    pairs_[k]->advance(Letter{static_cast<std::uint16_t>(first ? 0 : 1), 1});
  }
}

bool LnMachine::accepting() const {
  if (sign_conflict_) return false;
  return std::all_of(pairs_.begin(), pairs_.end(), [](const auto& p) { return p->accepting(); });
}

bool LnMachine::dead() const {
  if (sign_conflict_) return true;
  return std::any_of(pairs_.begin(), pairs_.end(), [](const auto& p) { return p->dead(); });
}

std::string LnMachine::control_state() const {
  std::string out = "signs=";
  for (auto s : sign_) out += s > 0 ? '+' : s < 0 ? '-' : '0';
  if (sign_conflict_) return out + ":conflict";
  for (const auto& p : pairs_) out += ";" + p->control_state();
  return out;
}

bool LnMachine::repositioned() const {
  return std::any_of(pairs_.begin(), pairs_.end(), [](const auto& p) { return p->repositioned(); });
}

std::vector<Tape*> LnMachine::work_tapes() {
  std::vector<Tape*> out;
  for (auto& p : pairs_) {
    for (Tape* t : p->work_tapes()) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Drivers

std::unique_ptr<RealTimeMachine> make_recognizer(Language language, std::size_t n) {
  switch (language) {
    case Language::kLsharp:
      return std::make_unique<LsharpMachine>();
    case Language::kL2Plus:
      return std::make_unique<L2PlusMachine>();
    case Language::kL2:
      return std::make_unique<L2Machine>();
    case Language::kLn:
      return std::make_unique<LnMachine>(n);
  }
  throw std::invalid_argument("unknown language");
}

std::optional<Letter> LetterStream::next() {
  ++requests_;
  if (position_ >= letters_.size()) return std::nullopt;
  return letters_[position_++];
}

Recognition run(RealTimeMachine& machine, LetterStream& input) {
  while (auto letter = input.next()) machine.feed(*letter);
  Recognition result;
  result.accepted = machine.accepting();
  if (!result.accepted) result.reject_position = machine.died_at().value_or(machine.consumed());
  result.summary = machine.trace().summary;
  result.summary.work_tapes = machine.work_tapes().size();
  return result;
}

Recognition recognize(Language language, LetterSpan letters, std::size_t n) {
  auto machine = make_recognizer(language, n);
  LetterStream input(letters);
  return run(*machine, input);
}

Recognition recognize_lsharp(LetterSpan letters) { return recognize(Language::kLsharp, letters); }
Recognition recognize_l2plus(LetterSpan letters) { return recognize(Language::kL2Plus, letters); }
Recognition recognize_l2(LetterSpan letters) { return recognize(Language::kL2, letters); }
Recognition recognize_ln(LetterSpan letters, std::size_t n) { return recognize(Language::kLn, letters, n); }

}  // namespace rtcomb
