#include "senlex/synthgen.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace senlex {

void SyntheticSpec::validate() const {
  if (n_pairs < 2) throw std::runtime_error("synthetic spec: n_pairs must be >= 2");
  if (n_reviews < 1) throw std::runtime_error("synthetic spec: n_reviews must be >= 1");
  for (double p : {negation_rate, and_rate, but_rate, noise_rate, fixed_fraction}) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::runtime_error("synthetic spec: rates must lie in [0,1]");
  }
  if (and_rate + but_rate > 1.0)
    throw std::runtime_error("synthetic spec: and_rate + but_rate must be <= 1");
}

namespace {

// Explicit draws on mt19937_64 keep the byte streams independent of the
// standard library's distribution implementations.
double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int rand_index(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

// Adjective stems the bundled tagger knows; indexed opinion words such as
// "shiny_4" tag as ADJ through its stem rule.
const char* kOpinionStems[] = {"shiny", "grim",  "vivid", "bleak", "crisp",
                               "dull",  "sleek", "plush", "roomy", "cozy",
                               "grimy", "shabby", "snug",  "stark"};

// Tagged OTHER/VERB by the bundled tagger, so filler never yields candidates.
const char* kFillerWords[] = {"it", "was", "what", "we", "had", "in", "the",
                              "end", "of", "all", "by", "then", "for", "sure",
                              "at", "that", "point", "to", "be", "honest"};

struct PairInfo {
  std::string feature;
  std::string opinion;
  Polarity planted = Polarity::Positive;
  bool fixed = false;
  bool trap = false;
};

struct Slot {
  int pair = -1;
  bool negated = false;
  Polarity expressed = Polarity::Positive;
  int joiner = 0;  // 0 none (comma / sentence break), 1 and, 2 but
};

Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

}  // namespace

SyntheticBundle generate(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  const int n_noise = (spec.n_pairs + 9) / 10;
  const int total = spec.n_pairs + n_noise;

  std::vector<PairInfo> pairs(static_cast<size_t>(total));
  const int n_stems = static_cast<int>(std::size(kOpinionStems));
  for (int j = 0; j < total; ++j) {
    PairInfo& p = pairs[static_cast<size_t>(j)];
    p.feature = "feat_" + std::to_string(j);
    p.opinion = std::string(kOpinionStems[j % n_stems]) + "_" + std::to_string(j);
    p.planted = rand_unit(rng) < 0.6 ? Polarity::Positive : Polarity::Negative;
    p.fixed = rand_unit(rng) < spec.fixed_fraction;
  }

  // Trap pairs probe the general-lexicon constraint: fixed negative pairs
  // occurring exactly once, unnegated, at the far end of a positive review.
  // The review-level and sentential signals for them point the wrong way, so
  // they are recovered through X0 or not at all.
  std::vector<int> traps;
  for (int j = 0; j < spec.n_pairs && static_cast<int>(traps.size()) < 3; ++j) {
    PairInfo& p = pairs[static_cast<size_t>(j)];
    if (p.fixed && p.planted == Polarity::Negative) {
      p.trap = true;
      traps.push_back(j);
    }
  }
  size_t trap_cursor = 0;

  // Selection pools over non-trap pairs.
  std::vector<int> pool_pos, pool_neg, fixed_pos, fixed_neg, free_pos, free_neg;
  for (int j = 0; j < total; ++j) {
    const PairInfo& p = pairs[static_cast<size_t>(j)];
    if (p.trap) continue;
    (p.planted == Polarity::Positive ? pool_pos : pool_neg).push_back(j);
    if (p.fixed)
      (p.planted == Polarity::Positive ? fixed_pos : fixed_neg).push_back(j);
    else
      (p.planted == Polarity::Positive ? free_pos : free_neg).push_back(j);
  }
  if (pool_pos.empty() || pool_neg.empty())
    throw std::runtime_error("synthetic spec: need at least one pair per polarity");

  auto pick = [&](const std::vector<int>& primary,
                  const std::vector<int>& fallback) -> int {
    const std::vector<int>& pool = primary.empty() ? fallback : primary;
    return pool[static_cast<size_t>(rand_index(rng, static_cast<int>(pool.size())))];
  };

  SyntheticBundle bundle;
  const int n_users = std::max(5, spec.n_reviews / 20);
  const int n_items = std::max(3, spec.n_reviews / 50);

  for (int i = 0; i < spec.n_reviews; ++i) {
    Polarity p_review = rand_unit(rng) < 0.62 ? Polarity::Positive : Polarity::Negative;
    int draw = rand_index(rng, 10);  // 1..3 subsentence slots, mean ~2
    int k = draw < 3 ? 1 : draw < 7 ? 2 : 3;
    int minority_budget = (k - 1) / 2;
    int minority_used = 0;

    std::vector<Slot> slots(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) {
      Slot& slot = slots[static_cast<size_t>(t)];
      if (t == 0) {
        slot.expressed = p_review;
      } else {
        Polarity prev = slots[static_cast<size_t>(t - 1)].expressed;
        double u = rand_unit(rng);
        if (u < spec.but_rate) {
          Polarity flipped = flip(prev);
          bool needs_budget = flipped != p_review;
          if (!needs_budget || minority_used < minority_budget) {
            slot.joiner = 2;
            slot.expressed = flipped;
            if (needs_budget) ++minority_used;
          } else {
            slot.expressed = p_review;
          }
        } else if (u < spec.but_rate + spec.and_rate) {
          bool needs_budget = prev != p_review;
          if (!needs_budget || minority_used < minority_budget) {
            slot.joiner = 1;
            slot.expressed = prev;
            if (needs_budget) ++minority_used;
          } else {
            slot.expressed = p_review;
          }
        } else {
          slot.expressed = p_review;
        }
      }

      slot.negated = rand_unit(rng) < spec.negation_rate;
      Polarity needed = slot.negated ? flip(slot.expressed) : slot.expressed;
      bool minority = slot.expressed != p_review;
      const auto& pos_primary = minority ? free_pos : pool_pos;
      const auto& neg_primary = minority ? free_neg : pool_neg;
      if (t == 0 && p_review == Polarity::Negative) {
        // Anchor negative reviews with a seed-visible slot so the classifier
        // sees their orientation.
        slot.pair = needed == Polarity::Positive ? pick(fixed_pos, pool_pos)
                                                 : pick(fixed_neg, pool_neg);
      } else {
        slot.pair = needed == Polarity::Positive ? pick(pos_primary, pool_pos)
                                                 : pick(neg_primary, pool_neg);
      }
    }

    // Append a trap slot to suitable positive reviews: unnegated, no
    // conjunction link, separated by a long filler stretch, and only when
    // every other slot expresses the review polarity and at least one slot
    // is seed-visible.
    if (p_review == Polarity::Positive && trap_cursor < traps.size() &&
        k >= 2 && minority_used == 0) {
      bool has_fixed_majority = false;
      for (const Slot& s : slots) {
        if (pairs[static_cast<size_t>(s.pair)].fixed &&
            s.expressed == p_review && !s.negated)
          has_fixed_majority = true;
      }
      if (has_fixed_majority) {
        Slot trap_slot;
        trap_slot.pair = traps[trap_cursor];
        trap_slot.negated = false;
        trap_slot.expressed = Polarity::Negative;
        trap_slot.joiner = 3;  // rendered behind a filler subsentence
        slots.push_back(trap_slot);
        ++trap_cursor;
      }
    }

    // Assemble the text: slots joined by " and " / " but " (sometimes with a
    // leading comma) or ", ", grouped into sentences of 1..3 subsentences.
    std::string text;
    int in_sentence = 0;
    int sentence_len = 1 + rand_index(rng, 3);
    for (size_t t = 0; t < slots.size(); ++t) {
      const Slot& slot = slots[t];
      if (t > 0) {
        if (slot.joiner == 1) {
          text += rand_unit(rng) < 0.5 ? " and " : ", and ";
        } else if (slot.joiner == 2) {
          text += rand_unit(rng) < 0.5 ? " but " : ", but ";
        } else if (slot.joiner == 3) {
          text += ", ";
          int n_filler = 12 + rand_index(rng, 6);
          for (int w = 0; w < n_filler; ++w) {
            if (w > 0) text += ' ';
            text += kFillerWords[rand_index(
                rng, static_cast<int>(std::size(kFillerWords)))];
          }
          text += ", ";
        } else if (in_sentence >= sentence_len) {
          text += ". ";
          in_sentence = 0;
          sentence_len = 1 + rand_index(rng, 3);
        } else {
          text += ", ";
        }
      }
      const PairInfo& pair = pairs[static_cast<size_t>(slot.pair)];
      text += pair.feature;
      text += slot.negated ? " is not " : " is ";
      text += pair.opinion;
      ++in_sentence;
    }
    text += ".";

    // Star rating follows the expressed majority (= review polarity by
    // construction), contradicted for a noise_rate fraction of reviews.
    Polarity rating_polarity = p_review;
    if (rand_unit(rng) < spec.noise_rate) rating_polarity = flip(rating_polarity);
    int rating = rating_polarity == Polarity::Positive ? 4 + rand_index(rng, 2)
                                                       : 1 + rand_index(rng, 3);
    std::array<int, 3> sub{};
    int sub_base = p_review == Polarity::Positive ? 4 + rand_index(rng, 2)
                                                  : 1 + rand_index(rng, 3);
    for (int c = 0; c < 3; ++c)
      sub[static_cast<size_t>(c)] =
          std::clamp(sub_base + rand_index(rng, 3) - 1, 1, 5);

    Review r;
    r.review_id = "r" + std::to_string(i);
    r.user_id = "user_" + std::to_string(i % n_users);
    r.item_id = "item_" + std::to_string(i % n_items);
    r.overall_rating = rating;
    r.subaspect_ratings = sub;
    r.text = text;
    bundle.reviews.push_back(std::move(r));
    bundle.review_polarities.push_back(p_review);
  }

  for (int j = 0; j < total; ++j) {
    const PairInfo& p = pairs[static_cast<size_t>(j)];
    bundle.pool.entries[{p.feature, p.opinion}] = p.planted;
    if (j < spec.n_pairs) bundle.gold.entries[{p.feature, p.opinion}] = p.planted;
    if (p.fixed) {
      (p.planted == Polarity::Positive ? bundle.positive_words
                                       : bundle.negative_words)
          .push_back(p.opinion);
    }
  }
  std::sort(bundle.positive_words.begin(), bundle.positive_words.end());
  std::sort(bundle.negative_words.begin(), bundle.negative_words.end());
  return bundle;
}

void write_bundle(const SyntheticBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out)
      throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };

  {
    std::ofstream out = open("corpus.jsonl");
    for (const Review& r : bundle.reviews) {
      nlohmann::json rec;
      rec["id"] = r.review_id;
      rec["user"] = r.user_id;
      rec["item"] = r.item_id;
      rec["rating"] = r.overall_rating;
      if (r.subaspect_ratings)
        rec["subratings"] = *r.subaspect_ratings;
      rec["text"] = r.text;
      out << rec.dump() << '\n';
    }
  }
  {
    std::ofstream out = open("gold.tsv");
    for (const auto& [key, label] : bundle.gold.entries)
      out << key.first << '\t' << key.second << '\t' << to_string(label) << '\n';
  }
  {
    std::ofstream out = open("pool.tsv");
    for (const auto& [key, label] : bundle.pool.entries)
      out << key.first << '\t' << key.second << '\t' << to_string(label) << '\n';
  }
  {
    std::ofstream out = open("positive.txt");
    for (const auto& w : bundle.positive_words) out << w << '\n';
  }
  {
    std::ofstream out = open("negative.txt");
    for (const auto& w : bundle.negative_words) out << w << '\n';
  }
  {
    std::ofstream out = open("annotations.tsv");
    for (size_t i = 0; i < bundle.reviews.size(); ++i)
      out << bundle.reviews[i].review_id << '\t'
          << to_string(bundle.review_polarities[i]) << '\n';
  }
  {
    std::ofstream out = open("synth.cfg");
    out << "corpus = corpus.jsonl\n"
        << "words_positive = positive.txt\n"
        << "words_negative = negative.txt\n"
        << "seeds_positive = positive.txt\n"
        << "seeds_negative = negative.txt\n"
        << "gold = gold.tsv\n"
        << "pool = pool.tsv\n"
        << "annotations = annotations.tsv\n"
        << "freq_threshold = 1\n"
        << "pmi_threshold = 1e-5\n"
        // planted pairs co-occur with their feature in every slot (COR = 1);
        // a high threshold drops the incidental cross-conjunction pairs
        << "cor_threshold = 0.6\n"
        << "discriminators = is\n"
        << "min_count = 1\n"
        << "opinion_profile = adj\n"
        << "lambda1 = 1\nlambda2 = 1\nlambda3 = 1\nlambda4 = 1\n"
        << "delta = 0.01\nmax_iters = 100\ninit_epsilon = 0.1\n";
  }
}

}  // namespace senlex
