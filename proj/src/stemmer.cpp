#include "sbsflow/stemmer.hpp"

#include <array>
#include <span>

#include "sbsflow/utf8.hpp"

namespace sbsflow {
namespace {

// Minimal Snowball runtime: the same cursor/limit/bra/ket model as the
// generated Snowball stemmers, so the algorithms below read step for step
// like their published definitions.
struct Among {
  std::u32string_view s;
  int result;
};

struct Env {
  std::u32string cur;
  int cursor = 0;
  int limit = 0;
  int limit_backward = 0;
  int bra = 0;
  int ket = 0;

  explicit Env(std::u32string s) : cur(std::move(s)), limit(static_cast<int>(cur.size())) {}

  static bool member(std::u32string_view g, char32_t c) { return g.find(c) != std::u32string_view::npos; }

  char32_t at(int i) const { return cur[static_cast<std::size_t>(i)]; }

  bool in_grouping(std::u32string_view g) {
    if (cursor >= limit || !member(g, at(cursor))) return false;
    ++cursor;
    return true;
  }
  bool out_grouping(std::u32string_view g) {
    if (cursor >= limit || member(g, at(cursor))) return false;
    ++cursor;
    return true;
  }
  // Moves to the next character inside `g` (cursor stops on it).
  bool go_out_grouping(std::u32string_view g) {
    while (cursor < limit) {
      if (member(g, at(cursor))) return true;
      ++cursor;
    }
    return false;
  }
  // Moves to the next character outside `g`.
  bool go_in_grouping(std::u32string_view g) {
    while (cursor < limit) {
      if (!member(g, at(cursor))) return true;
      ++cursor;
    }
    return false;
  }
  bool in_grouping_b(std::u32string_view g) {
    if (cursor <= limit_backward || !member(g, at(cursor - 1))) return false;
    --cursor;
    return true;
  }
  bool out_grouping_b(std::u32string_view g) {
    if (cursor <= limit_backward || member(g, at(cursor - 1))) return false;
    --cursor;
    return true;
  }
  bool go_out_grouping_b(std::u32string_view g) {
    while (cursor > limit_backward) {
      if (member(g, at(cursor - 1))) return true;
      --cursor;
    }
    return false;
  }
  bool eq_s(std::u32string_view s) {
    if (limit - cursor < static_cast<int>(s.size())) return false;
    if (std::u32string_view(cur).substr(static_cast<std::size_t>(cursor), s.size()) != s) return false;
    cursor += static_cast<int>(s.size());
    return true;
  }
  bool eq_s_b(std::u32string_view s) {
    if (cursor - limit_backward < static_cast<int>(s.size())) return false;
    if (std::u32string_view(cur).substr(static_cast<std::size_t>(cursor) - s.size(), s.size()) != s) return false;
    cursor -= static_cast<int>(s.size());
    return true;
  }
  bool prev_is(char32_t c) const { return cursor > limit_backward && at(cursor - 1) == c; }
  bool next_is(char32_t c) const { return cursor < limit && at(cursor) == c; }

  // Longest entry matching at the cursor (forward); 0 when nothing matches.
  int find_among(std::span<const Among> table) {
    int best = -1;
    for (std::size_t i = 0; i < table.size(); ++i) {
      auto len = static_cast<int>(table[i].s.size());
      if (limit - cursor < len) continue;
      if (std::u32string_view(cur).substr(static_cast<std::size_t>(cursor), table[i].s.size()) != table[i].s) continue;
      if (best < 0 || len > static_cast<int>(table[static_cast<std::size_t>(best)].s.size())) best = static_cast<int>(i);
    }
    if (best < 0) return 0;
    cursor += static_cast<int>(table[static_cast<std::size_t>(best)].s.size());
    return table[static_cast<std::size_t>(best)].result;
  }

  // Longest entry ending at the cursor (backward); 0 when nothing matches.
  int find_among_b(std::span<const Among> table) {
    int best = -1;
    for (std::size_t i = 0; i < table.size(); ++i) {
      auto len = static_cast<int>(table[i].s.size());
      if (cursor - limit_backward < len) continue;
      if (std::u32string_view(cur).substr(static_cast<std::size_t>(cursor - len), table[i].s.size()) != table[i].s) {
        continue;
      }
      if (best < 0 || len > static_cast<int>(table[static_cast<std::size_t>(best)].s.size())) best = static_cast<int>(i);
    }
    if (best < 0) return 0;
    cursor -= static_cast<int>(table[static_cast<std::size_t>(best)].s.size());
    return table[static_cast<std::size_t>(best)].result;
  }

  int replace_s(int c_bra, int c_ket, std::u32string_view s) {
    int adjustment = static_cast<int>(s.size()) - (c_ket - c_bra);
    cur.replace(static_cast<std::size_t>(c_bra), static_cast<std::size_t>(c_ket - c_bra), s);
    limit += adjustment;
    if (cursor >= c_ket) {
      cursor += adjustment;
    } else if (cursor > c_bra) {
      cursor = c_bra;
    }
    return adjustment;
  }
  void slice_from(std::u32string_view s) {
    replace_s(bra, ket, s);
    ket = bra + static_cast<int>(s.size());
  }
  void slice_del() { slice_from(U""); }
  void insert(int c_bra, int c_ket, std::u32string_view s) {
    int adjustment = replace_s(c_bra, c_ket, s);
    if (c_bra <= bra) bra += adjustment;
    if (c_bra <= ket) ket += adjustment;
  }
};

// ---------------------------------------------------------------- Porter

constexpr std::u32string_view kPorterV = U"aeiouy";
constexpr std::u32string_view kPorterVWXY = U"Yaeiouwxy";

constexpr std::array<Among, 4> kPorterStep1a{{{U"s", 3}, {U"ies", 2}, {U"sses", 1}, {U"ss", -1}}};
constexpr std::array<std::u32string_view, 3> kPorterStep1aOut{U"ss", U"i", U""};

constexpr std::array<Among, 13> kPorterStep1bTail{{{U"", 3},
                                                  {U"bb", 2},
                                                  {U"dd", 2},
                                                  {U"ff", 2},
                                                  {U"gg", 2},
                                                  {U"bl", 1},
                                                  {U"mm", 2},
                                                  {U"nn", 2},
                                                  {U"pp", 2},
                                                  {U"rr", 2},
                                                  {U"at", 1},
                                                  {U"tt", 2},
                                                  {U"iz", 1}}};

constexpr std::array<Among, 3> kPorterStep1b{{{U"ed", 2}, {U"eed", 1}, {U"ing", 2}}};

constexpr std::array<Among, 20> kPorterStep2{{{U"anci", 3},    {U"enci", 2},    {U"abli", 4},    {U"eli", 6},
                                              {U"alli", 9},    {U"ousli", 11},  {U"entli", 5},   {U"aliti", 9},
                                              {U"biliti", 13}, {U"iviti", 12},  {U"tional", 1},  {U"ational", 8},
                                              {U"alism", 9},   {U"ation", 8},   {U"ization", 7}, {U"izer", 7},
                                              {U"ator", 8},    {U"iveness", 12}, {U"fulness", 10}, {U"ousness", 11}}};
constexpr std::array<std::u32string_view, 13> kPorterStep2Out{U"tion", U"ence", U"ance", U"able", U"ent", U"e", U"ize",
                                                              U"ate",  U"al",   U"ful",  U"ous",  U"ive", U"ble"};

constexpr std::array<Among, 7> kPorterStep3{
    {{U"icate", 2}, {U"ative", 3}, {U"alize", 1}, {U"iciti", 2}, {U"ical", 2}, {U"ful", 3}, {U"ness", 3}}};
constexpr std::array<std::u32string_view, 3> kPorterStep3Out{U"al", U"ic", U""};

constexpr std::array<Among, 19> kPorterStep4{{{U"ic", 1},   {U"ance", 1}, {U"ence", 1}, {U"able", 1}, {U"ible", 1},
                                              {U"ate", 1},  {U"ive", 1},  {U"ize", 1},  {U"iti", 1},  {U"al", 1},
                                              {U"ism", 1},  {U"ion", 2},  {U"er", 1},   {U"ous", 1},  {U"ant", 1},
                                              {U"ent", 1},  {U"ment", 1}, {U"ement", 1}, {U"ou", 1}}};

class PorterRun {
 public:
  explicit PorterRun(std::u32string word) : z_(std::move(word)) {}

  std::u32string run() {
    bool y_found = false;
    auto& s = z_.cur;
    if (!s.empty() && s[0] == U'y') {
      s[0] = U'Y';
      y_found = true;
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (Env::member(kPorterV, s[i]) && s[i + 1] == U'y') {
        s[i + 1] = U'Y';
        y_found = true;
      }
    }
    mark_regions();
    z_.limit_backward = 0;
    step(&PorterRun::step_1a);
    step(&PorterRun::step_1b);
    step(&PorterRun::step_1c);
    step(&PorterRun::step_2);
    step(&PorterRun::step_3);
    step(&PorterRun::step_4);
    step(&PorterRun::step_5a);
    step(&PorterRun::step_5b);
    std::u32string out = z_.cur.substr(0, static_cast<std::size_t>(z_.limit));
    if (y_found) {
      for (auto& c : out) {
        if (c == U'Y') c = U'y';
      }
    }
    return out;
  }

 private:
  void step(bool (PorterRun::*fn)()) {
    z_.cursor = z_.limit;
    (this->*fn)();
  }

  void mark_regions() {
    p1_ = p2_ = z_.limit;
    z_.cursor = 0;
    if (!z_.go_out_grouping(kPorterV)) return;
    ++z_.cursor;
    if (!z_.go_in_grouping(kPorterV)) return;
    ++z_.cursor;
    p1_ = z_.cursor;
    if (!z_.go_out_grouping(kPorterV)) return;
    ++z_.cursor;
    if (!z_.go_in_grouping(kPorterV)) return;
    ++z_.cursor;
    p2_ = z_.cursor;
  }

  bool r1() const { return p1_ <= z_.cursor; }
  bool r2() const { return p2_ <= z_.cursor; }

  bool shortv() {
    return z_.out_grouping_b(kPorterVWXY) && z_.in_grouping_b(kPorterV) && z_.out_grouping_b(kPorterV);
  }

  bool step_1a() {
    z_.ket = z_.cursor;
    int v = z_.find_among_b(kPorterStep1a);
    if (v == 0) return false;
    z_.bra = z_.cursor;
    if (v > 0) z_.slice_from(kPorterStep1aOut[static_cast<std::size_t>(v - 1)]);
    return true;
  }

  bool step_1b() {
    z_.ket = z_.cursor;
    int v = z_.find_among_b(kPorterStep1b);
    if (v == 0) return false;
    z_.bra = z_.cursor;
    if (v == 1) {
      if (!r1()) return false;
      z_.slice_from(U"ee");
      return true;
    }
    int save = z_.limit - z_.cursor;
    if (!z_.go_out_grouping_b(kPorterV)) return false;
    z_.cursor = z_.limit - save;
    z_.slice_del();
    save = z_.limit - z_.cursor;
    int tail = z_.find_among_b(kPorterStep1bTail);
    z_.cursor = z_.limit - save;
    if (tail == 1) {
      int c = z_.cursor;
      z_.insert(z_.cursor, z_.cursor, U"e");
      z_.cursor = c;
    } else if (tail == 2) {
      z_.ket = z_.cursor;
      if (z_.cursor <= z_.limit_backward) return false;
      --z_.cursor;
      z_.bra = z_.cursor;
      z_.slice_del();
    } else {
      if (z_.cursor != p1_) return false;
      int keep = z_.limit - z_.cursor;
      if (!shortv()) return false;
      z_.cursor = z_.limit - keep;
      int c = z_.cursor;
      z_.insert(z_.cursor, z_.cursor, U"e");
      z_.cursor = c;
    }
    return true;
  }

  bool step_1c() {
    z_.ket = z_.cursor;
    if (z_.prev_is(U'y') || z_.prev_is(U'Y')) {
      --z_.cursor;
    } else {
      return false;
    }
    z_.bra = z_.cursor;
    if (!z_.go_out_grouping_b(kPorterV)) return false;
    --z_.cursor;
    z_.slice_from(U"i");
    return true;
  }

  bool step_2() {
    z_.ket = z_.cursor;
    int v = z_.find_among_b(kPorterStep2);
    if (v == 0) return false;
    z_.bra = z_.cursor;
    if (!r1()) return false;
    z_.slice_from(kPorterStep2Out[static_cast<std::size_t>(v - 1)]);
    return true;
  }

  bool step_3() {
    z_.ket = z_.cursor;
    int v = z_.find_among_b(kPorterStep3);
    if (v == 0) return false;
    z_.bra = z_.cursor;
    if (!r1()) return false;
    z_.slice_from(kPorterStep3Out[static_cast<std::size_t>(v - 1)]);
    return true;
  }

  bool step_4() {
    z_.ket = z_.cursor;
    int v = z_.find_among_b(kPorterStep4);
    if (v == 0) return false;
    z_.bra = z_.cursor;
    if (!r2()) return false;
    if (v == 2) {
      if (z_.prev_is(U's') || z_.prev_is(U't')) {
        --z_.cursor;
      } else {
        return false;
      }
    }
    z_.slice_del();
    return true;
  }

  bool step_5a() {
    z_.ket = z_.cursor;
    if (!z_.prev_is(U'e')) return false;
    --z_.cursor;
    z_.bra = z_.cursor;
    if (!r2()) {
      if (!r1()) return false;
      int save = z_.limit - z_.cursor;
      if (shortv()) return false;
      z_.cursor = z_.limit - save;
    }
    z_.slice_del();
    return true;
  }

  bool step_5b() {
    z_.ket = z_.cursor;
    if (!z_.prev_is(U'l')) return false;
    --z_.cursor;
    z_.bra = z_.cursor;
    if (!r2()) return false;
    if (!z_.prev_is(U'l')) return false;
    --z_.cursor;
    z_.slice_del();
    return true;
  }

  Env z_;
  int p1_ = 0;
  int p2_ = 0;
};

// --------------------------------------------------------------- Italian

constexpr std::u32string_view kItV = U"aeiouàèìòù";
constexpr std::u32string_view kItAEIO = U"aeioàèìò";
constexpr std::u32string_view kItCG = U"cg";

constexpr std::array<Among, 16> kItElisions{{{U"all'", 1},  {U"d'", 1},     {U"dall'", 1}, {U"dell'", 1},
                                             {U"gl'", 1},   {U"l'", 1},     {U"m'", 1},    {U"nell'", 1},
                                             {U"quell'", 1}, {U"quest'", 1}, {U"s'", 1},    {U"sull'", 1},
                                             {U"t'", 1},    {U"tutt'", 1},  {U"un'", 1},   {U"v'", 1}}};

constexpr std::array<Among, 37> kItPronoun{{{U"la", 1},     {U"cela", 1},   {U"gliela", 1}, {U"mela", 1},
                                            {U"tela", 1},   {U"vela", 1},   {U"le", 1},     {U"cele", 1},
                                            {U"gliele", 1}, {U"mele", 1},   {U"tele", 1},   {U"vele", 1},
                                            {U"ne", 1},     {U"cene", 1},   {U"gliene", 1}, {U"mene", 1},
                                            {U"sene", 1},   {U"tene", 1},   {U"vene", 1},   {U"ci", 1},
                                            {U"li", 1},     {U"celi", 1},   {U"glieli", 1}, {U"meli", 1},
                                            {U"teli", 1},   {U"veli", 1},   {U"gli", 1},    {U"mi", 1},
                                            {U"si", 1},     {U"ti", 1},     {U"vi", 1},     {U"lo", 1},
                                            {U"celo", 1},   {U"glielo", 1}, {U"melo", 1},   {U"telo", 1},
                                            {U"velo", 1}}};

constexpr std::array<Among, 5> kItPronounHost{{{U"ando", 1}, {U"endo", 1}, {U"ar", 2}, {U"er", 2}, {U"ir", 2}}};

constexpr std::array<Among, 4> kItAmenteTail{{{U"ic", 2}, {U"abil", 2}, {U"os", 2}, {U"iv", 1}}};
constexpr std::array<Among, 3> kItItaTail{{{U"ic", 1}, {U"abil", 1}, {U"iv", 1}}};

constexpr std::array<Among, 51> kItStandard{{{U"ica", 1},    {U"logia", 3},  {U"osa", 1},    {U"ista", 1},
                                             {U"iva", 9},    {U"anza", 1},   {U"enza", 5},   {U"ice", 1},
                                             {U"atrice", 1}, {U"iche", 1},   {U"logie", 3},  {U"abile", 1},
                                             {U"ibile", 1},  {U"usione", 4}, {U"azione", 2}, {U"uzione", 4},
                                             {U"atore", 2},  {U"ose", 1},    {U"ante", 1},   {U"mente", 1},
                                             {U"amente", 7}, {U"iste", 1},   {U"ive", 9},    {U"anze", 1},
                                             {U"enze", 5},   {U"ici", 1},    {U"atrici", 1}, {U"ichi", 1},
                                             {U"abili", 1},  {U"ibili", 1},  {U"ismi", 1},   {U"usioni", 4},
                                             {U"azioni", 2}, {U"uzioni", 4}, {U"atori", 2},  {U"osi", 1},
                                             {U"anti", 1},   {U"amenti", 6}, {U"imenti", 6}, {U"isti", 1},
                                             {U"ivi", 9},    {U"ico", 1},    {U"ismo", 1},   {U"oso", 1},
                                             {U"amento", 6}, {U"imento", 6}, {U"ivo", 9},    {U"ità", 8},
                                             {U"istà", 1},   {U"istè", 1},   {U"istì", 1}}};

constexpr std::array<Among, 87> kItVerb{
    {{U"isca", 1},     {U"enda", 1},     {U"ata", 1},    {U"ita", 1},    {U"uta", 1},    {U"ava", 1},
     {U"eva", 1},      {U"iva", 1},      {U"erebbe", 1}, {U"irebbe", 1}, {U"isce", 1},   {U"ende", 1},
     {U"are", 1},      {U"ere", 1},      {U"ire", 1},    {U"asse", 1},   {U"ate", 1},    {U"avate", 1},
     {U"evate", 1},    {U"ivate", 1},    {U"ete", 1},    {U"erete", 1},  {U"irete", 1},  {U"ite", 1},
     {U"ereste", 1},   {U"ireste", 1},   {U"ute", 1},    {U"erai", 1},   {U"irai", 1},   {U"isci", 1},
     {U"endi", 1},     {U"erei", 1},     {U"irei", 1},   {U"assi", 1},   {U"ati", 1},    {U"iti", 1},
     {U"eresti", 1},   {U"iresti", 1},   {U"uti", 1},    {U"avi", 1},    {U"evi", 1},    {U"ivi", 1},
     {U"isco", 1},     {U"ando", 1},     {U"endo", 1},   {U"Yamo", 1},   {U"iamo", 1},   {U"avamo", 1},
     {U"evamo", 1},    {U"ivamo", 1},    {U"eremo", 1},  {U"iremo", 1},  {U"assimo", 1}, {U"ammo", 1},
     {U"emmo", 1},     {U"eremmo", 1},   {U"iremmo", 1}, {U"immo", 1},   {U"ano", 1},    {U"iscano", 1},
     {U"avano", 1},    {U"evano", 1},    {U"ivano", 1},  {U"eranno", 1}, {U"iranno", 1}, {U"ono", 1},
     {U"iscono", 1},   {U"arono", 1},    {U"erono", 1},  {U"irono", 1},  {U"erebbero", 1}, {U"irebbero", 1},
     {U"assero", 1},   {U"essero", 1},   {U"issero", 1}, {U"ato", 1},    {U"ito", 1},    {U"uto", 1},
     {U"avo", 1},      {U"evo", 1},      {U"ivo", 1},    {U"ar", 1},     {U"ir", 1},     {U"erà", 1},
     {U"irà", 1},      {U"erò", 1},      {U"irò", 1}}};

class ItalianRun {
 public:
  explicit ItalianRun(std::u32string word) : z_(std::move(word)) {}

  std::u32string run() {
    elisions();
    prelude();
    mark_regions();
    z_.limit_backward = 0;
    z_.cursor = z_.limit;
    attached_pronoun();
    z_.cursor = z_.limit;
    if (!standard_suffix()) {
      z_.cursor = z_.limit;
      verb_suffix();
    }
    z_.cursor = z_.limit;
    vowel_suffix();
    std::u32string out = z_.cur.substr(0, static_cast<std::size_t>(z_.limit));
    for (auto& c : out) {
      if (c == U'I') c = U'i';
      if (c == U'U') c = U'u';
    }
    return out;
  }

 private:
  bool rv() const { return pv_ <= z_.cursor; }
  bool r2() const { return p2_ <= z_.cursor; }

  void elisions() {
    z_.cursor = 0;
    z_.bra = z_.cursor;
    if (z_.find_among(kItElisions) == 0) return;
    z_.ket = z_.cursor;
    if (z_.cursor >= z_.limit) return;
    z_.slice_del();
  }

  void prelude() {
    auto& s = z_.cur;
    auto n = static_cast<std::size_t>(z_.limit);
    for (std::size_t i = 0; i < n; ++i) {
      switch (s[i]) {
        case U'á': s[i] = U'à'; break;
        case U'é': s[i] = U'è'; break;
        case U'í': s[i] = U'ì'; break;
        case U'ó': s[i] = U'ò'; break;
        case U'ú': s[i] = U'ù'; break;
        case U'q':
          if (i + 1 < n && s[i + 1] == U'u') s[++i] = U'U';
          break;
        default: break;
      }
    }
    // u or i between vowels become consonants.
    for (std::size_t i = 0; i + 2 < n; ++i) {
      if (!Env::member(kItV, s[i]) || !Env::member(kItV, s[i + 2])) continue;
      if (s[i + 1] == U'u') {
        s[i + 1] = U'U';
      } else if (s[i + 1] == U'i') {
        s[i + 1] = U'I';
      }
    }
  }

  bool vowel(int i) const { return Env::member(kItV, z_.at(i)); }

  void mark_regions() {
    const int n = z_.limit;
    pv_ = p1_ = p2_ = n;
    pv_ = compute_rv(n);

    z_.cursor = 0;
    if (!z_.go_out_grouping(kItV)) return;
    ++z_.cursor;
    if (!z_.go_in_grouping(kItV)) return;
    ++z_.cursor;
    p1_ = z_.cursor;
    if (!z_.go_out_grouping(kItV)) return;
    ++z_.cursor;
    if (!z_.go_in_grouping(kItV)) return;
    ++z_.cursor;
    p2_ = z_.cursor;
  }

  // Start of RV: after the next vowel when the second letter is a consonant,
  // after the next consonant when the first two letters are vowels, and after
  // the third letter for consonant-vowel starts.
  int compute_rv(int n) const {
    auto next_vowel_after = [&](int from) {
      for (int c = from; c < n; ++c) {
        if (vowel(c)) return c + 1;
      }
      return -1;
    };
    auto next_consonant_after = [&](int from) {
      for (int c = from; c < n; ++c) {
        if (!vowel(c)) return c + 1;
      }
      return -1;
    };
    if (n >= 1 && vowel(0) && n >= 2) {
      int r = vowel(1) ? next_consonant_after(2) : next_vowel_after(2);
      if (r >= 0) return r;
    }
    if (z_.cur.compare(0, 5, U"divan") == 0) return 5;
    if (n >= 2 && !vowel(0)) {
      if (!vowel(1)) {
        int r = next_vowel_after(2);
        if (r >= 0) return r;
      } else if (n > 2) {
        return 3;
      }
    }
    return n;
  }

  bool attached_pronoun() {
    z_.ket = z_.cursor;
    if (z_.find_among_b(kItPronoun) == 0) return false;
    z_.bra = z_.cursor;
    int v = z_.find_among_b(kItPronounHost);
    if (v == 0) return false;
    if (!rv()) return false;
    z_.slice_from(v == 1 ? U"" : U"e");
    return true;
  }

  // Deletes `suffix` just before the cursor when it lies in R2; restores the
  // cursor otherwise.
  bool optional_r2_delete(std::u32string_view suffix) {
    int save = z_.limit - z_.cursor;
    z_.ket = z_.cursor;
    if (!z_.eq_s_b(suffix)) {
      z_.cursor = z_.limit - save;
      return false;
    }
    z_.bra = z_.cursor;
    if (!r2()) {
      z_.cursor = z_.limit - save;
      return false;
    }
    z_.slice_del();
    return true;
  }

  bool standard_suffix() {
    z_.ket = z_.cursor;
    int v = z_.find_among_b(kItStandard);
    if (v == 0) return false;
    z_.bra = z_.cursor;
    switch (v) {
      case 1:
        if (!r2()) return false;
        z_.slice_del();
        break;
      case 2:
        if (!r2()) return false;
        z_.slice_del();
        optional_r2_delete(U"ic");
        break;
      case 3:
        if (!r2()) return false;
        z_.slice_from(U"log");
        break;
      case 4:
        if (!r2()) return false;
        z_.slice_from(U"u");
        break;
      case 5:
        if (!r2()) return false;
        z_.slice_from(U"ente");
        break;
      case 6:
        if (!rv()) return false;
        z_.slice_del();
        break;
      case 7: {
        if (p1_ > z_.cursor) return false;
        z_.slice_del();
        int save = z_.limit - z_.cursor;
        z_.ket = z_.cursor;
        int tail = z_.find_among_b(kItAmenteTail);
        if (tail == 0) {
          z_.cursor = z_.limit - save;
          break;
        }
        z_.bra = z_.cursor;
        if (!r2()) {
          z_.cursor = z_.limit - save;
          break;
        }
        z_.slice_del();
        if (tail == 1 && !optional_r2_delete(U"at")) z_.cursor = z_.limit - save;
        break;
      }
      case 8: {
        if (!r2()) return false;
        z_.slice_del();
        int save = z_.limit - z_.cursor;
        z_.ket = z_.cursor;
        if (z_.find_among_b(kItItaTail) == 0) {
          z_.cursor = z_.limit - save;
          break;
        }
        z_.bra = z_.cursor;
        if (!r2()) {
          z_.cursor = z_.limit - save;
          break;
        }
        z_.slice_del();
        break;
      }
      default: {
        if (!r2()) return false;
        z_.slice_del();
        if (optional_r2_delete(U"at")) optional_r2_delete(U"ic");
        break;
      }
    }
    return true;
  }

  bool verb_suffix() {
    if (z_.cursor < pv_) return false;
    int saved_limit = z_.limit_backward;
    z_.limit_backward = pv_;
    z_.ket = z_.cursor;
    if (z_.find_among_b(kItVerb) == 0) {
      z_.limit_backward = saved_limit;
      return false;
    }
    z_.bra = z_.cursor;
    z_.slice_del();
    z_.limit_backward = saved_limit;
    return true;
  }

  void vowel_suffix() {
    int save = z_.limit - z_.cursor;
    z_.ket = z_.cursor;
    if (z_.in_grouping_b(kItAEIO)) {
      z_.bra = z_.cursor;
      if (rv()) {
        z_.slice_del();
        z_.ket = z_.cursor;
        if (z_.prev_is(U'i')) {
          --z_.cursor;
          z_.bra = z_.cursor;
          if (rv()) {
            z_.slice_del();
          } else {
            z_.cursor = z_.limit - save;
          }
        } else {
          z_.cursor = z_.limit - save;
        }
      } else {
        z_.cursor = z_.limit - save;
      }
    } else {
      z_.cursor = z_.limit - save;
    }

    save = z_.limit - z_.cursor;
    z_.ket = z_.cursor;
    if (!z_.prev_is(U'h')) return;
    --z_.cursor;
    z_.bra = z_.cursor;
    if (!z_.in_grouping_b(kItCG) || !rv()) {
      z_.cursor = z_.limit - save;
      return;
    }
    z_.slice_del();
  }

  Env z_;
  int pv_ = 0;
  int p1_ = 0;
  int p2_ = 0;
};

}  // namespace

std::optional<Language> parse_language(std::string_view name) {
  if (name == "english" || name == "en") return Language::English;
  if (name == "italian" || name == "it") return Language::Italian;
  return std::nullopt;
}

std::string_view language_name(Language lang) noexcept {
  return lang == Language::English ? "english" : "italian";
}

std::string Stemmer::stem_stable(std::string_view word) const {
  std::string current(word);
  for (int i = 0; i < 8; ++i) {
    std::string next = stem(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::string PorterStemmer::stem(std::string_view word) const {
  return utf8::encode(PorterRun(utf8::decode(word)).run());
}

std::string ItalianStemmer::stem(std::string_view word) const {
  return utf8::encode(ItalianRun(utf8::decode(word)).run());
}

std::unique_ptr<Stemmer> make_stemmer(Language lang) {
  if (lang == Language::English) return std::make_unique<PorterStemmer>();
  return std::make_unique<ItalianStemmer>();
}

}  // namespace sbsflow
