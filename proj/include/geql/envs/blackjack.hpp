#pragma once

#include "geql/core.hpp"

namespace geql {

namespace blackjack {

/// Uniform draw over 13 ranks; face cards count 10, aces 1.
inline int draw_card(Rng& rng) {
  return std::min(std::uniform_int_distribution<int>(1, 13)(rng), 10);
}

/// Running hand value with the usual single usable-ace accounting.
struct Hand {
  int sum = 0;
  bool usable_ace = false;

  void add(int card) {
    if (card == 1 && sum + 11 <= 21) {
      sum += 11;
      usable_ace = true;
    } else {
      sum += card;
    }
    if (sum > 21 && usable_ace) {
      sum -= 10;
      usable_ace = false;
    }
  }
};

/// Dealer draws (hole card first) until reaching 17 or more.
inline int dealer_play(int upcard, Rng& rng) {
  Hand h;
  h.add(upcard);
  while (h.sum < 17) h.add(draw_card(rng));
  return h.sum;
}

/// Settles a stick by sum comparison; a busted dealer loses.
inline double outcome(int player_sum, int dealer_sum) {
  if (dealer_sum > 21) return 1.0;
  if (player_sum > dealer_sum) return 1.0;
  if (player_sum < dealer_sum) return -1.0;
  return 0.0;
}

}  // namespace blackjack

/// Blackjack as defined in Sutton & Barto 5.1: infinite deck, player states
/// are sums 12..21 (lower sums auto-hit), dealer stands at 17. Actions:
/// stick = 0, hit = 1 (a zero-initialized greedy learner then defaults to
/// the benign action rather than hitting itself bust). Rewards +1/0/-1 at
/// the end of the hand.
class BlackjackEnv : public Environment {
 public:
  enum Action { kStick = 0, kHit = 1 };

  int observation_dim() const override { return 3; }
  int action_count() const override { return 2; }

  FeatureVector reset(Rng& rng) override {
    blackjack::Hand hand;
    hand.add(blackjack::draw_card(rng));
    hand.add(blackjack::draw_card(rng));
    natural_ = hand.sum == 21;
    while (hand.sum < 12) hand.add(blackjack::draw_card(rng));
    player_sum_ = hand.sum;
    usable_ = hand.usable_ace;
    dealer_showing_ = blackjack::draw_card(rng);
    done_ = false;
    return observe();
  }

  StepResult step(ActionId action, Rng& rng) override {
    if (done_) throw std::logic_error("BlackjackEnv: step after terminal");
    if (action == kHit) {
      blackjack::Hand hand{player_sum_, usable_};
      hand.add(blackjack::draw_card(rng));
      player_sum_ = hand.sum;
      usable_ = hand.usable_ace;
      natural_ = false;
      if (player_sum_ > 21) {
        done_ = true;
        return {observe(), -1.0, true};
      }
      return {observe(), 0.0, false};
    }
    // Stick: a natural settles against the dealer's first two cards only.
    done_ = true;
    if (natural_) {
      const int hole = blackjack::draw_card(rng);
      const bool dealer_natural = (dealer_showing_ == 1 && hole == 10) ||
                                  (dealer_showing_ == 10 && hole == 1);
      return {observe(), dealer_natural ? 0.0 : 1.0, true};
    }
    const int dealer_sum = blackjack::dealer_play(dealer_showing_, rng);
    return {observe(), blackjack::outcome(player_sum_, dealer_sum), true};
  }

  int player_sum() const { return player_sum_; }
  int dealer_showing() const { return dealer_showing_; }
  bool usable_ace() const { return usable_; }
  bool natural() const { return natural_; }

  // test seam: force a mid-hand state
  void set_state(int player_sum, bool usable, int dealer_showing, bool natural) {
    player_sum_ = player_sum;
    usable_ = usable;
    dealer_showing_ = dealer_showing;
    natural_ = natural;
    done_ = false;
  }

 private:
  int player_sum_ = 0;
  bool usable_ = false;
  int dealer_showing_ = 1;
  bool natural_ = false;
  bool done_ = true;

  FeatureVector observe() const {
    return {static_cast<double>(player_sum_), static_cast<double>(dealer_showing_),
            usable_ ? 1.0 : 0.0};
  }
};

}  // namespace geql
