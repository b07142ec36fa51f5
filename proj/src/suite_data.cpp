#include "syngauntlet/suite_data.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "syngauntlet/error.hpp"
#include "syngauntlet/utf8.hpp"

namespace syngauntlet {

// --- expansion --------------------------------------------------------------

namespace {

struct Piece {
  bool slot = false;
  std::string text;  // literal text or placeholder name
};

std::vector<Piece> split_template(const std::string& tmpl) {
  std::vector<Piece> out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const std::size_t open = tmpl.find('{', i);
    if (open == std::string::npos) {
      out.push_back({false, tmpl.substr(i)});
      break;
    }
    const std::size_t close = tmpl.find('}', open);
    if (close == std::string::npos) throw InconsistentLexiconError("unterminated placeholder in '" + tmpl + "'");
    if (open > i) out.push_back({false, tmpl.substr(i, open - i)});
    out.push_back({true, tmpl.substr(open + 1, close - open - 1)});
    i = close + 1;
  }
  return out;
}

std::string tidy(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace

TestSuite expand_template(const SuiteTemplate& tmpl, const SuiteMeta& meta) {
  TestSuite suite;
  suite.name = meta.name;
  suite.circuit = meta.circuit;
  suite.language = meta.language;
  suite.has_modifier = meta.has_modifier;
  suite.modifier_pair_id = meta.modifier_pair_id;
  suite.condition_names = tmpl.condition_names;
  suite.region_names = tmpl.region_names;
  suite.predictions = tmpl.predictions;

  // Frames per condition, pre-split.
  std::map<std::string, std::vector<std::vector<Piece>>> frames;
  for (const std::string& c : tmpl.condition_names) {
    auto it = tmpl.frames.find(c);
    if (it == tmpl.frames.end()) it = tmpl.frames.find("*");
    if (it == tmpl.frames.end()) throw InconsistentLexiconError("no frame for condition '" + c + "'");
    auto& split = frames[c];
    for (const std::string& region : it->second) split.push_back(split_template(region));
  }

  // Which group binds each placeholder.
  std::map<std::string, std::size_t> owner;
  for (std::size_t g = 0; g < tmpl.slots.size(); ++g) {
    const auto& entries = tmpl.slots[g].entries;
    if (entries.empty()) throw InconsistentLexiconError("slot group " + std::to_string(g + 1) + " has no entries");
    for (const auto& [name, _] : entries.front().forms) {
      if (!owner.emplace(name, g).second) {
        throw InconsistentLexiconError("placeholder '" + name + "' is bound by more than one group");
      }
    }
    for (std::size_t k = 1; k < entries.size(); ++k) {
      if (entries[k].forms.size() != entries.front().forms.size() ||
          !std::equal(entries[k].forms.begin(), entries[k].forms.end(), entries.front().forms.begin(),
                      [](const auto& a, const auto& b) { return a.first == b.first; })) {
        throw InconsistentLexiconError("entries of slot group " + std::to_string(g + 1) + " bind different placeholders");
      }
    }
  }
  for (const auto& [c, regions] : frames) {
    for (const auto& pieces : regions) {
      for (const Piece& p : pieces) {
        if (p.slot && !owner.count(p.text)) throw InconsistentLexiconError("placeholder '" + p.text + "' is unbound");
      }
    }
  }

  // Entry choices, one index per group.
  std::vector<std::vector<std::size_t>> combos;
  if (!tmpl.slots.empty()) {
    if (tmpl.mode == ExpansionMode::Zip) {
      const std::size_t n = tmpl.slots.front().entries.size();
      for (const SlotGroup& g : tmpl.slots) {
        if (g.entries.size() != n) throw InconsistentLexiconError("zipped slot groups differ in length");
      }
      for (std::size_t k = 0; k < n; ++k) combos.emplace_back(tmpl.slots.size(), k);
    } else {
      std::vector<std::size_t> pick(tmpl.slots.size(), 0);
      for (;;) {
        combos.push_back(pick);
        std::size_t g = pick.size();
        while (g > 0 && ++pick[g - 1] == tmpl.slots[g - 1].entries.size()) {
          pick[g - 1] = 0;
          --g;
        }
        if (g == 0) break;
      }
    }
  } else {
    combos.emplace_back();
  }

  int index = 0;
  for (const auto& lead : tmpl.leading_items) suite.items.push_back({++index, lead});

  for (const auto& combo : combos) {
    Item item;
    for (const std::string& c : tmpl.condition_names) {
      RegionedSentence sentence;
      for (const auto& pieces : frames.at(c)) {
        std::string text;
        for (const Piece& p : pieces) {
          if (!p.slot) {
            text += p.text;
            continue;
          }
          const std::size_t g = owner.at(p.text);
          const LexiconEntry& entry = tmpl.slots[g].entries[combo[g]];
          const ConditionForms& forms = entry.forms.at(p.text);
          auto f = forms.find(c);
          if (f == forms.end()) f = forms.find("*");
          if (f == forms.end()) {
            throw InconsistentLexiconError("entry " + std::to_string(combo[g] + 1) + " of slot group " +
                                           std::to_string(g + 1) + " has no form of '" + p.text +
                                           "' for condition '" + c + "'");
          }
          text += f->second;
        }
        sentence.regions.push_back(tidy(text));
      }
      if (tmpl.capitalize) {
        for (std::string& r : sentence.regions) {
          if (r.empty()) continue;
          r = utf8::capitalize_first(r);
          break;
        }
      }
      item.sentences.emplace(c, std::move(sentence));
    }
    const bool duplicate = std::any_of(tmpl.leading_items.begin(), tmpl.leading_items.end(),
                                       [&](const auto& lead) { return lead == item.sentences; });
    if (duplicate) continue;
    item.index = ++index;
    suite.items.push_back(std::move(item));
  }
  return suite;
}

// --- authoring helpers ------------------------------------------------------

namespace {

using Example = std::map<std::string, RegionedSentence>;

ConditionForms all(std::string s) { return {{"*", std::move(s)}}; }

/// Entry whose placeholders have the same form in every condition.
LexiconEntry fixed(std::initializer_list<std::pair<std::string, std::string>> values) {
  LexiconEntry e;
  for (const auto& [k, v] : values) e.forms[k] = all(v);
  return e;
}

SlotGroup group(std::vector<LexiconEntry> entries) { return {std::move(entries)}; }

RegionedSentence rs(std::initializer_list<std::string> regions) { return {regions}; }

std::string cmp(int region, const std::string& a, const char* op, const std::string& b) {
  const std::string r = std::to_string(region);
  return "(" + r + ";" + a + ") " + op + " (" + r + ";" + b + ")";
}

/// The shared nominal-agreement predictions: full match beats every
/// mismatch, and a single mismatch beats the double one.
std::vector<std::string> agreement_predictions(int region, const std::string& match, const std::string& number,
                                               const std::string& gender, const std::string& both) {
  return {cmp(region, match, "<", number), cmp(region, match, "<", gender), cmp(region, match, "<", both),
          cmp(region, number, "<", both), cmp(region, gender, "<", both)};
}

const std::vector<std::string> kAgreementConditions = {"match", "number_mismatch", "gender_mismatch", "both_mismatch"};
const ConditionGrades kAgreementGrades = {
    {"match", 1.0}, {"number_mismatch", 2.0}, {"gender_mismatch", 2.0}, {"both_mismatch", 3.0}};

// Gender/number inflection of an -o/-a adjective or participle.
struct Features {
  bool feminine = false;
  bool plural = false;
};

std::string inflect(const std::string& stem, Features f) {
  return stem + (f.feminine ? "a" : "o") + (f.plural ? "s" : "");
}

/// Forms of an adjective stem under the four relational conditions, given
/// the controller's features.
ConditionForms agreement_forms(const std::string& stem, Features f) {
  return {{"match", inflect(stem, f)},
          {"number_mismatch", inflect(stem, {f.feminine, !f.plural})},
          {"gender_mismatch", inflect(stem, {!f.feminine, f.plural})},
          {"both_mismatch", inflect(stem, {!f.feminine, !f.plural})}};
}

// --- Agreement --------------------------------------------------------------

ShippedSuite basic_subject_verb() {
  // Present-tense endings by conjugation class, person (1..3) and number.
  const std::map<char, std::array<std::array<const char*, 2>, 3>> endings = {
      {'a', {{{"o", "amos"}, {"as", "áis"}, {"a", "an"}}}},
      {'e', {{{"o", "emos"}, {"es", "éis"}, {"e", "en"}}}},
      {'i', {{{"o", "imos"}, {"es", "ís"}, {"e", "en"}}}},
  };
  struct Verb {
    std::string stem;
    char cls;
  };
  struct Subject {
    std::string text;
    int person;  // 1..3
    int plural;  // 0 or 1
  };
  const std::vector<Subject> subjects = {{"Yo", 1, 0},       {"Tú", 2, 0},        {"Ella", 3, 0},
                                         {"Nosotros", 1, 1}, {"Vosotras", 2, 1}, {"Ellos", 3, 1}};
  const std::vector<Verb> verbs = {{"trabaj", 'a'}, {"com", 'e'}, {"viv", 'i'}, {"cant", 'a'}};
  auto form = [&](const Verb& v, int person, int plural) {
    return v.stem + endings.at(v.cls)[static_cast<std::size_t>(person - 1)][static_cast<std::size_t>(plural)];
  };
  // Person used for the person mismatch, and for the double mismatch.
  const int other_person[] = {0, 2, 1, 1};
  const int far_person[] = {0, 3, 3, 1};

  std::vector<LexiconEntry> entries;
  for (const Subject& s : subjects) {
    for (const Verb& v : verbs) {
      LexiconEntry e;
      e.forms["subj"] = all(s.text);
      e.forms["verb"] = {{"match", form(v, s.person, s.plural)},
                         {"person_mismatch", form(v, other_person[s.person], s.plural)},
                         {"number_mismatch", form(v, s.person, 1 - s.plural)},
                         {"both_mismatch", form(v, far_person[s.person], 1 - s.plural)}};
      entries.push_back(std::move(e));
    }
  }

  ShippedSuite s;
  s.slug = "basic_subject_verb_agreement";
  s.meta = {"Basic Subject-Verb Agreement", Circuit::Agreement, "es", false, "subject_verb_agreement"};
  s.tmpl.condition_names = {"match", "person_mismatch", "number_mismatch", "both_mismatch"};
  s.tmpl.region_names = {"subject", "verb"};
  s.tmpl.frames = {{"*", {"{subj}", "{verb}"}}};
  s.tmpl.slots = {group(std::move(entries))};
  s.tmpl.predictions = {cmp(2, "match", "<", "person_mismatch"), cmp(2, "match", "<", "number_mismatch"),
                        cmp(2, "match", "<", "both_mismatch"), cmp(2, "person_mismatch", "<", "both_mismatch"),
                        cmp(2, "number_mismatch", "<", "both_mismatch")};
  s.tmpl.leading_items = {Example{{"match", rs({"Tú", "cocinas"})},
                                  {"person_mismatch", rs({"Tú", "cocino"})},
                                  {"number_mismatch", rs({"Tú", "cocinais"})},
                                  {"both_mismatch", rs({"Tú", "cocinan"})}}};
  s.grades = {{"match", 1.0}, {"person_mismatch", 2.0}, {"number_mismatch", 2.0}, {"both_mismatch", 3.0}};
  return s;
}

ShippedSuite subject_verb_with_rc(bool object_rc) {
  // Subject noun phrase, singular and plural.
  const std::vector<std::pair<std::string, std::string>> subjects = {{"La enfermera", "Las enfermeras"},
                                                                     {"El cocinero", "Los cocineros"},
                                                                     {"La profesora", "Las profesoras"},
                                                                     {"El médico", "Los médicos"},
                                                                     {"El cartero", "Los carteros"}};
  // Relative clause after a singular subject, and after a plural one. The
  // distractor noun always has the other number.
  const std::vector<std::pair<std::string, std::string>> clauses =
      object_rc ? std::vector<std::pair<std::string, std::string>>{{"que los vecinos saludaron", "que el vecino saludó"},
                                                                   {"que las actrices conocen", "que la actriz conoce"}}
                : std::vector<std::pair<std::string, std::string>>{{"que saludó a los vecinos", "que saludaron al vecino"},
                                                                   {"que conoce a las actrices", "que conocen a la actriz"}};
  const std::vector<std::array<std::string, 3>> verbs = {{"trabaja", "trabajan", "los sábados."},
                                                         {"vive", "viven", "en el centro."}};

  std::vector<LexiconEntry> subject_entries, clause_entries, verb_entries;
  for (const auto& [sg, pl] : subjects) {
    subject_entries.push_back({{{"subj", {{"sg_match", sg}, {"sg_mismatch", sg}, {"pl_match", pl}, {"pl_mismatch", pl}}}}});
  }
  for (const auto& [sg, pl] : clauses) {
    clause_entries.push_back({{{"rc", {{"sg_match", sg}, {"sg_mismatch", sg}, {"pl_match", pl}, {"pl_mismatch", pl}}}}});
  }
  for (const auto& [sg, pl, rest] : verbs) {
    verb_entries.push_back(
        {{{"verb", {{"sg_match", sg}, {"sg_mismatch", pl}, {"pl_match", pl}, {"pl_mismatch", sg}}}, {"rest", all(rest)}}});
  }

  ShippedSuite s;
  s.slug = object_rc ? "subject_verb_agreement_object_rc" : "subject_verb_agreement_subject_rc";
  s.meta = {object_rc ? "Subject-Verb Agreement with Object Relative Clause"
                      : "Subject-Verb Agreement with Subject Relative Clause",
            Circuit::Agreement, "es", true, "subject_verb_agreement"};
  s.tmpl.condition_names = {"sg_match", "sg_mismatch", "pl_match", "pl_mismatch"};
  s.tmpl.region_names = {"subject", "relative_clause", "verb", "continuation"};
  s.tmpl.frames = {{"*", {"{subj}", "{rc}", "{verb}", "{rest}"}}};
  s.tmpl.slots = {group(subject_entries), group(clause_entries), group(verb_entries)};
  s.tmpl.predictions = {cmp(3, "sg_match", "<", "sg_mismatch"), cmp(3, "pl_match", "<", "pl_mismatch")};
  if (!object_rc) {
    s.tmpl.leading_items = {Example{
        {"sg_match", rs({"El fontanero", "que ayudó a los albañiles", "trabaja", "los sábados."})},
        {"sg_mismatch", rs({"El fontanero", "que ayudó a los albañiles", "trabajan", "los sábados."})},
        {"pl_match", rs({"Los fontaneros", "que ayudaron al albañil", "trabajan", "los sábados."})},
        {"pl_mismatch", rs({"Los fontaneros", "que ayudaron al albañil", "trabaja", "los sábados."})}}};
  }
  s.grades = {{"sg_match", 1.0}, {"sg_mismatch", 2.0}, {"pl_match", 1.0}, {"pl_mismatch", 2.0}};
  return s;
}

ShippedSuite determiner_noun() {
  // Masculine singular nouns, so "el" is the only agreeing article.
  std::vector<LexiconEntry> nouns;
  for (const char* n : {"perro", "libro", "coche", "árbol", "zapato", "caballo", "queso", "barco", "martillo", "espejo",
                        "sombrero", "tren", "cuchillo", "pájaro", "reloj", "lápiz", "balón", "vaso", "plato", "río"}) {
    nouns.push_back(fixed({{"noun", n}}));
  }
  ShippedSuite s;
  s.slug = "determiner_noun_agreement";
  s.meta = {"Determiner-Noun Agreement", Circuit::Agreement, "es", false, std::nullopt};
  s.tmpl.condition_names = {"m_sg", "f_sg", "m_pl", "f_pl"};
  s.tmpl.region_names = {"determiner", "noun"};
  s.tmpl.frames = {{"m_sg", {"El", "{noun}"}}, {"f_sg", {"La", "{noun}"}}, {"m_pl", {"Los", "{noun}"}}, {"f_pl", {"Las", "{noun}"}}};
  s.tmpl.slots = {group(std::move(nouns))};
  s.tmpl.predictions = agreement_predictions(2, "m_sg", "m_pl", "f_sg", "f_pl");
  s.tmpl.leading_items = {Example{{"m_sg", rs({"El", "gato"})},
                                  {"f_sg", rs({"La", "gato"})},
                                  {"m_pl", rs({"Los", "gato"})},
                                  {"f_pl", rs({"Las", "gato"})}}};
  s.grades = {{"m_sg", 1.0}, {"f_sg", 2.0}, {"m_pl", 2.0}, {"f_pl", 3.0}};
  return s;
}

ShippedSuite adjective_noun() {
  std::vector<LexiconEntry> contexts;
  for (const char* c : {"La tienda vende", "Mi vecino compra", "El mercado ofrece", "La fábrica produce"}) {
    contexts.push_back(fixed({{"ctx", c}}));
  }
  struct Pair {
    std::string noun;
    Features f;
    std::string stem;
  };
  const std::vector<Pair> pairs = {{"camisas", {true, true}, "blanc"},  {"zapatos", {false, true}, "negr"},
                                   {"sillas", {true, true}, "barat"},   {"vino", {false, false}, "tint"},
                                   {"fruta", {true, false}, "fresc"},   {"juguetes", {false, true}, "antigu"}};
  std::vector<LexiconEntry> nps;
  for (const Pair& p : pairs) nps.push_back({{{"noun", all(p.noun)}, {"adj", agreement_forms(p.stem, p.f)}}});

  ShippedSuite s;
  s.slug = "adjective_noun_agreement";
  s.meta = {"Adjective-Noun Agreement", Circuit::Agreement, "es", false, std::nullopt};
  s.tmpl.condition_names = kAgreementConditions;
  s.tmpl.region_names = {"context", "noun", "adjective"};
  s.tmpl.frames = {{"*", {"{ctx}", "{noun}", "{adj}"}}};
  s.tmpl.slots = {group(std::move(contexts)), group(std::move(nps))};
  s.tmpl.predictions = agreement_predictions(3, "match", "number_mismatch", "gender_mismatch", "both_mismatch");
  s.tmpl.leading_items = {Example{{"match", rs({"La tienda vende", "discos", "usados"})},
                                  {"number_mismatch", rs({"La tienda vende", "discos", "usado"})},
                                  {"gender_mismatch", rs({"La tienda vende", "discos", "usadas"})},
                                  {"both_mismatch", rs({"La tienda vende", "discos", "usada"})}}};
  s.grades = kAgreementGrades;
  return s;
}

enum class AttributeModifier { None, ObjectRc, SubjectRc };

ShippedSuite attribute(AttributeModifier modifier) {
  struct Subject {
    std::string np;
    Features f;
  };
  const std::vector<Subject> subjects = {{"La casa", {true, false}},
                                         {"Los coches", {false, true}},
                                         {"Las habitaciones", {true, true}},
                                         {"El armario", {false, false}},
                                         {"La nevera", {true, false}}};
  const std::vector<std::string> stems = {"limpi", "suci", "llen", "ordenad"};

  std::vector<LexiconEntry> entries;
  for (const Subject& subj : subjects) {
    for (const std::string& stem : stems) {
      LexiconEntry e;
      e.forms["subj"] = all(subj.np);
      e.forms["cop"] = all(subj.f.plural ? "están" : "está");
      e.forms["rc"] = all(modifier == AttributeModifier::ObjectRc ? "que alquilaron mis primos"
                          : subj.f.plural                          ? "que tienen dos puertas"
                                                                   : "que tiene dos puertas");
      e.forms["adj"] = agreement_forms(stem, subj.f);
      entries.push_back(std::move(e));
    }
  }

  ShippedSuite s;
  s.tmpl.condition_names = kAgreementConditions;
  s.tmpl.slots = {group(std::move(entries))};
  s.grades = kAgreementGrades;
  if (modifier == AttributeModifier::None) {
    s.slug = "attribute_agreement";
    s.meta = {"Attribute Agreement", Circuit::Agreement, "es", false, "attribute_agreement"};
    s.tmpl.region_names = {"subject", "copula", "attribute"};
    s.tmpl.frames = {{"*", {"{subj}", "{cop}", "{adj}"}}};
    s.tmpl.predictions = agreement_predictions(3, "match", "number_mismatch", "gender_mismatch", "both_mismatch");
    s.tmpl.leading_items = {Example{{"match", rs({"El piso", "está", "vacío"})},
                                    {"number_mismatch", rs({"El piso", "está", "vacíos"})},
                                    {"gender_mismatch", rs({"El piso", "está", "vacía"})},
                                    {"both_mismatch", rs({"El piso", "está", "vacías"})}}};
  } else {
    const bool object = modifier == AttributeModifier::ObjectRc;
    s.slug = object ? "attribute_agreement_object_rc" : "attribute_agreement_subject_rc";
    s.meta = {object ? "Attribute Agreement with Object Relative Clause" : "Attribute Agreement with Subject Relative Clause",
              Circuit::Agreement, "es", true, "attribute_agreement"};
    s.tmpl.region_names = {"subject", "relative_clause", "copula", "attribute"};
    s.tmpl.frames = {{"*", {"{subj}", "{rc}", "{cop}", "{adj}"}}};
    s.tmpl.predictions = agreement_predictions(4, "match", "number_mismatch", "gender_mismatch", "both_mismatch");
  }
  return s;
}

ShippedSuite predicative() {
  struct Frame {
    std::string first, second;
    Features f;
    std::vector<std::string> stems;
  };
  const std::vector<Frame> frames = {
      {"La actriz", "salió", {true, false}, {"content", "emocionad", "cansad"}},
      {"Los soldados", "volvieron", {false, true}, {"herid", "agotad", "content"}},
      {"Mi abuela", "vive", {true, false}, {"tranquil", "sol", "content"}},
      {"El niño", "durmió", {false, false}, {"tranquil", "agotad"}},
      {"Encontré", "a las niñas", {true, true}, {"dormid", "asustad", "content"}},
      {"Vi", "a tu hermano", {false, false}, {"preocupad", "cansad"}},
      {"Dejamos", "la puerta", {true, false}, {"abiert", "cerrad"}},
      {"Compraron", "los tomates", {false, true}, {"madur", "podrid"}},
  };
  std::vector<LexiconEntry> entries;
  for (const Frame& fr : frames) {
    for (const std::string& stem : fr.stems) {
      entries.push_back({{{"a", all(fr.first)}, {"b", all(fr.second)}, {"adj", agreement_forms(stem, fr.f)}}});
    }
  }
  ShippedSuite s;
  s.slug = "predicative_agreement";
  s.meta = {"Predicative Agreement", Circuit::Agreement, "es", false, std::nullopt};
  s.tmpl.condition_names = kAgreementConditions;
  s.tmpl.region_names = {"clause_start", "clause_end", "predicative"};
  s.tmpl.frames = {{"*", {"{a}", "{b}", "{adj}"}}};
  s.tmpl.slots = {group(std::move(entries))};
  s.tmpl.predictions = agreement_predictions(3, "match", "number_mismatch", "gender_mismatch", "both_mismatch");
  s.tmpl.leading_items = {Example{{"match", rs({"Los niños", "llegaron", "cansados"})},
                                  {"number_mismatch", rs({"Los niños", "llegaron", "cansado"})},
                                  {"gender_mismatch", rs({"Los niños", "llegaron", "cansadas"})},
                                  {"both_mismatch", rs({"Los niños", "llegaron", "cansada"})}}};
  s.grades = kAgreementGrades;
  return s;
}

// --- Center Embedding -------------------------------------------------------

ShippedSuite center_embedding(bool with_pp) {
  // matrix subject, embedded subject, embedded verb, matrix verb, PP modifier
  const std::vector<std::array<std::string, 5>> rows = {
      {"La tormenta", "el capitán", "capeó", "amainó", "del barco"},
      {"El libro", "el profesor", "recomendó", "desapareció", "de historia"},
      {"La carta", "mi hermana", "escribió", "llegó", "de Madrid"},
      {"El coche", "el mecánico", "reparó", "arrancó", "del taller"},
      {"La canción", "el cantante", "compuso", "triunfó", "de la banda"},
      {"El pastel", "la abuela", "horneó", "sobró", "de Juan"},
      {"La puerta", "el carpintero", "arregló", "crujió", "del pueblo"},
      {"El puente", "los ingenieros", "diseñaron", "colapsó", "de la empresa"},
      {"La película", "el director", "rodó", "fracasó", "de Roma"},
      {"El jarrón", "la niña", "rompió", "brillaba", "de la vecina"},
      {"La noticia", "el periodista", "publicó", "circuló", "del diario"},
      {"El árbol", "el jardinero", "plantó", "creció", "del parque"},
      {"La comida", "el chef", "preparó", "sobró", "del hotel"},
      {"El cuadro", "el pintor", "terminó", "deslumbró", "de Sevilla"},
      {"La fiesta", "mis amigos", "organizaron", "duró", "de la universidad"},
      {"El barco", "el armador", "construyó", "naufragó", "del puerto"},
      {"La ley", "el gobierno", "aprobó", "caducó", "de la nación"},
      {"El perro", "el vecino", "adoptó", "ladró", "del quinto"},
      {"La vela", "el monaguillo", "encendió", "ardió", "de la iglesia"},
      {"El paquete", "el cartero", "entregó", "pesaba", "del barrio"},
      {"La flor", "la jardinera", "regó", "floreció", "del parque"},
  };
  std::vector<LexiconEntry> entries;
  for (const auto& [np1, np2, v_emb, v_mat, pp] : rows) {
    entries.push_back(fixed({{"np1", np1}, {"np2", np2}, {"v_emb", v_emb}, {"v_mat", v_mat}, {"pp", pp}}));
  }
  ShippedSuite s;
  s.tmpl.condition_names = {"plaus", "implaus"};
  s.tmpl.mode = ExpansionMode::Zip;
  s.tmpl.slots = {group(std::move(entries))};
  s.grades = {{"plaus", 1.0}, {"implaus", 2.0}};
  if (!with_pp) {
    s.slug = "center_embedding";
    s.meta = {"Center Embedding", Circuit::CenterEmbedding, "es", false, "center_embedding"};
    s.tmpl.region_names = {"matrix_subject", "complementizer", "embedded_subject", "first_verb", "second_verb"};
    s.tmpl.frames = {{"plaus", {"{np1}", "que", "{np2}", "{v_emb}", "{v_mat}."}},
                     {"implaus", {"{np1}", "que", "{np2}", "{v_mat}", "{v_emb}."}}};
    s.tmpl.predictions = {"(4;plaus) + (5;plaus) < (4;implaus) + (5;implaus)"};
  } else {
    s.slug = "center_embedding_pp_modifier";
    s.meta = {"Center Embedding with PP Modifier", Circuit::CenterEmbedding, "es", true, "center_embedding"};
    s.tmpl.region_names = {"matrix_subject", "complementizer", "embedded_subject", "modifier", "first_verb",
                           "second_verb"};
    s.tmpl.frames = {{"plaus", {"{np1}", "que", "{np2}", "{pp}", "{v_emb}", "{v_mat}."}},
                     {"implaus", {"{np1}", "que", "{np2}", "{pp}", "{v_mat}", "{v_emb}."}}};
    s.tmpl.predictions = {"(5;plaus) + (6;plaus) < (5;implaus) + (6;implaus)"};
  }
  return s;
}

// --- Gross Syntactic State --------------------------------------------------

enum class SubordinationModifier { None, ObjectRc, SubjectRc };

ShippedSuite subordination(SubordinationModifier modifier) {
  std::vector<LexiconEntry> subordinators;
  for (const char* w : {"Mientras", "Cuando", "Aunque", "Porque"}) subordinators.push_back(fixed({{"sub", w}}));

  // Every clause row: the regions between the subordinator and the final
  // word, the final word, and the matrix clause.
  std::vector<LexiconEntry> clauses;
  std::vector<std::string> middle_regions;
  int last_region = 0;
  switch (modifier) {
    case SubordinationModifier::None: {
      const std::vector<std::array<std::string, 3>> rows = {
          {"ella miraba los", "resultados", "el doctor entró en la habitación."},
          {"el niño dormía en el", "sofá", "sus padres cenaron en la cocina."},
          {"mi hermano estudiaba para el", "examen", "nosotros vimos una película."},
          {"la lluvia caía sobre la", "ciudad", "los turistas visitaron el museo."},
          {"el perro ladraba en el", "jardín", "el cartero dejó el paquete."},
          {"los alumnos leían el", "libro", "la profesora corrigió los exámenes."},
      };
      for (const auto& [clause, last, matrix] : rows) clauses.push_back(fixed({{"m1", clause}, {"last", last}, {"matrix", matrix}}));
      middle_regions = {"{m1}"};
      break;
    }
    case SubordinationModifier::ObjectRc: {
      const std::vector<std::array<std::string, 4>> rows = {
          {"ella miraba los resultados", "que el laboratorio", "envió", "el doctor entró en la habitación."},
          {"el niño dormía en el sofá", "que su abuelo", "compró", "sus padres cenaron en la cocina."},
          {"mi hermano estudiaba el tema", "que la profesora", "explicó", "nosotros vimos una película."},
          {"la lluvia mojaba las calles", "que el alcalde", "asfaltó", "los turistas visitaron el museo."},
          {"el perro mordía el hueso", "que el carnicero", "regaló", "el cartero dejó el paquete."},
          {"los alumnos leían el libro", "que la biblioteca", "prestó", "la profesora corrigió los exámenes."},
      };
      for (const auto& [clause, rc, last, matrix] : rows) {
        clauses.push_back(fixed({{"m1", clause}, {"m2", rc}, {"last", last}, {"matrix", matrix}}));
      }
      middle_regions = {"{m1}", "{m2}"};
      break;
    }
    case SubordinationModifier::SubjectRc: {
      const std::vector<std::array<std::string, 5>> rows = {
          {"la enfermera", "que trabajaba de noche", "miraba los", "resultados", "el doctor entró en la habitación."},
          {"el niño", "que tenía fiebre", "dormía en el", "sofá", "sus padres cenaron en la cocina."},
          {"mi hermano", "que vive en Madrid", "estudiaba para el", "examen", "nosotros vimos una película."},
          {"el viento", "que venía del norte", "azotaba la", "ciudad", "los turistas visitaron el museo."},
          {"el perro", "que estaba atado", "ladraba en el", "jardín", "el cartero dejó el paquete."},
          {"los alumnos", "que llegaron tarde", "leían el", "libro", "la profesora corrigió los exámenes."},
      };
      for (const auto& [subj, rc, rest, last, matrix] : rows) {
        clauses.push_back(fixed({{"m1", subj}, {"m2", rc}, {"m3", rest}, {"last", last}, {"matrix", matrix}}));
      }
      middle_regions = {"{m1}", "{m2}", "{m3}"};
      break;
    }
  }
  last_region = static_cast<int>(middle_regions.size()) + 2;

  auto frame = [&](bool sub, bool matrix) {
    std::vector<std::string> regions = {sub ? "{sub}" : ""};
    regions.insert(regions.end(), middle_regions.begin(), middle_regions.end());
    regions.push_back(matrix ? "{last}," : "{last}.");
    regions.push_back(matrix ? "{matrix}" : "");
    return regions;
  };

  ShippedSuite s;
  s.tmpl.condition_names = {"sub_matrix", "no_sub_matrix", "sub_no_matrix", "no_sub_no_matrix"};
  s.tmpl.frames = {{"sub_matrix", frame(true, true)},
                   {"no_sub_matrix", frame(false, true)},
                   {"sub_no_matrix", frame(true, false)},
                   {"no_sub_no_matrix", frame(false, false)}};
  s.tmpl.slots = {group(std::move(subordinators)), group(std::move(clauses))};
  s.tmpl.predictions = {cmp(last_region, "sub_no_matrix", ">", "no_sub_no_matrix"),
                        cmp(last_region + 1, "sub_matrix", "<", "no_sub_matrix")};
  s.grades = {{"sub_matrix", 1.0}, {"no_sub_matrix", 2.0}, {"sub_no_matrix", 2.0}, {"no_sub_no_matrix", 1.0}};
  switch (modifier) {
    case SubordinationModifier::None:
      s.slug = "subordination";
      s.meta = {"Subordination", Circuit::GrossSyntacticState, "es", false, "subordination"};
      s.tmpl.region_names = {"subordinator", "clause", "clause_end", "matrix_clause"};
      s.tmpl.leading_items = {Example{
          {"sub_matrix", rs({"Mientras", "ella miraba los", "resultados,", "el doctor entró en la habitación."})},
          {"no_sub_matrix", rs({"", "Ella miraba los", "resultados,", "el doctor entró en la habitación."})},
          {"sub_no_matrix", rs({"Mientras", "ella miraba los", "resultados.", ""})},
          {"no_sub_no_matrix", rs({"", "Ella miraba los", "resultados.", ""})}}};
      break;
    case SubordinationModifier::ObjectRc:
      s.slug = "subordination_object_rc";
      s.meta = {"Subordination with Object Relative Clause", Circuit::GrossSyntacticState, "es", true, "subordination"};
      s.tmpl.region_names = {"subordinator", "clause", "relative_clause", "clause_end", "matrix_clause"};
      break;
    case SubordinationModifier::SubjectRc:
      s.slug = "subordination_subject_rc";
      s.meta = {"Subordination with Subject Relative Clause", Circuit::GrossSyntacticState, "es", true, "subordination"};
      s.tmpl.region_names = {"subordinator", "subject", "relative_clause", "clause", "clause_end", "matrix_clause"};
      break;
  }
  return s;
}

// --- Long-Distance Dependencies ---------------------------------------------

ShippedSuite filler_gap(bool embeddings) {
  std::vector<LexiconEntry> prefixes, mods, clauses;
  if (embeddings) {
    for (const char* p : {"Yo sé", "El policía descubrió"}) prefixes.push_back(fixed({{"pre", p}}));
    for (const char* m : {"mi madre dijo que tu padre pensaba que el vecino creía que",
                          "el juez afirmó que la testigo sabía que el portero vio que"}) {
      mods.push_back(fixed({{"mods", m}}));
    }
  } else {
    for (const char* p : {"Yo sé", "Ella sabe", "Mi madre recuerda", "El policía descubrió"}) {
      prefixes.push_back(fixed({{"pre", p}}));
    }
  }
  const std::vector<std::array<std::string, 3>> rows = {
      {"tu amigo tiró", "una colilla", "al suelo."},
      {"el camarero sirvió", "un café", "en la terraza."},
      {"mi primo compró", "una bicicleta", "en el mercado."},
      {"la vecina escondió", "las llaves", "debajo de la alfombra."},
      {"el niño dibujó", "un caballo", "en la pared."},
  };
  for (const auto& [emb, obj, cont] : rows) clauses.push_back(fixed({{"emb", emb}, {"obj", obj}, {"cont", cont}}));

  auto frame = [&](bool what, bool gap) {
    std::vector<std::string> regions = {"{pre}", what ? "lo que" : "que"};
    if (embeddings) regions.push_back("{mods}");
    regions.push_back("{emb}");
    regions.push_back(gap ? "" : "{obj}");
    regions.push_back("{cont}");
    return regions;
  };
  const int object_region = embeddings ? 5 : 4;

  ShippedSuite s;
  s.tmpl.condition_names = {"what_gap", "that_gap", "what_nogap", "that_nogap"};
  s.tmpl.frames = {{"what_gap", frame(true, true)},
                   {"that_gap", frame(false, true)},
                   {"what_nogap", frame(true, false)},
                   {"that_nogap", frame(false, false)}};
  s.tmpl.predictions = {cmp(object_region, "what_nogap", ">", "that_nogap"),
                        cmp(object_region + 1, "what_gap", "<", "that_gap")};
  s.grades = {{"what_gap", 1.0}, {"that_gap", 2.0}, {"what_nogap", 2.0}, {"that_nogap", 1.0}};
  if (!embeddings) {
    s.slug = "basic_filler_gap";
    s.meta = {"Basic Filler-Gap Dependencies", Circuit::LongDistanceDependencies, "es", false, "filler_gap"};
    s.tmpl.region_names = {"prefix", "complementizer", "embedded_clause", "object", "continuation"};
    s.tmpl.slots = {group(std::move(prefixes)), group(std::move(clauses))};
    s.tmpl.leading_items = {Example{
        {"what_gap", rs({"Yo sé", "lo que", "tu amigo tiró", "", "al suelo."})},
        {"that_gap", rs({"Yo sé", "que", "tu amigo tiró", "", "al suelo."})},
        {"what_nogap", rs({"Yo sé", "lo que", "tu amigo tiró", "una colilla", "al suelo."})},
        {"that_nogap", rs({"Yo sé", "que", "tu amigo tiró", "una colilla", "al suelo."})}}};
  } else {
    s.slug = "filler_gap_three_embeddings";
    s.meta = {"Filler-Gap Dependencies with Three Sentential Embeddings", Circuit::LongDistanceDependencies, "es",
              true, "filler_gap"};
    s.tmpl.region_names = {"prefix", "complementizer", "embeddings", "embedded_clause", "object", "continuation"};
    s.tmpl.slots = {group(std::move(prefixes)), group(std::move(mods)), group(std::move(clauses))};
  }
  return s;
}

ShippedSuite pseudo_cleft() {
  struct Subject {
    std::string text;
    int form;  // 0: tú, 1: third singular, 2: third plural
  };
  const std::vector<Subject> subjects = {{"tú", 0}, {"ella", 1}, {"mi hermano", 1}, {"los vecinos", 2}};
  struct Verb {
    std::array<std::string, 3> forms;
    std::string np, infinitive;
  };
  const std::vector<Verb> verbs = {
      {{"difundiste", "difundió", "difundieron"}, "un rumor", "confirmar"},
      {{"escribiste", "escribió", "escribieron"}, "una carta", "enviar"},
      {{"compraste", "compró", "compraron"}, "un coche", "vender"},
      {{"pintaste", "pintó", "pintaron"}, "un cuadro", "restaurar"},
      {{"cocinaste", "cocinó", "cocinaron"}, "una paella", "probar"},
  };
  const std::array<std::string, 3> light = {"hiciste", "hizo", "hicieron"};

  std::vector<LexiconEntry> entries;
  for (const Subject& subj : subjects) {
    for (const Verb& v : verbs) {
      entries.push_back(fixed({{"subj", subj.text},
                               {"heavy", v.forms[static_cast<std::size_t>(subj.form)]},
                               {"light", light[static_cast<std::size_t>(subj.form)]},
                               {"np", v.np},
                               {"inf", v.infinitive}}));
    }
  }
  ShippedSuite s;
  s.slug = "pseudo_cleft";
  s.meta = {"Pseudo-Cleft Structures", Circuit::LongDistanceDependencies, "es", false, std::nullopt};
  s.tmpl.condition_names = {"heavy_np", "light_np", "heavy_vp", "light_vp"};
  s.tmpl.region_names = {"wh_subject", "verb", "copula", "extracted"};
  s.tmpl.frames = {{"heavy_np", {"Lo que {subj}", "{heavy}", "fue", "{np}."}},
                   {"light_np", {"Lo que {subj}", "{light}", "fue", "{np}."}},
                   {"heavy_vp", {"Lo que {subj}", "{heavy}", "fue", "{inf} {np}."}},
                   {"light_vp", {"Lo que {subj}", "{light}", "fue", "{inf} {np}."}}};
  s.tmpl.slots = {group(std::move(entries))};
  s.tmpl.predictions = {cmp(4, "light_vp", "<", "heavy_vp"), cmp(4, "light_np", ">", "heavy_np"),
                        "((4;heavy_vp) - (4;light_vp)) > ((4;light_np) - (4;heavy_np))"};
  s.tmpl.leading_items = {Example{{"heavy_np", rs({"Lo que tú", "difundiste", "fue", "un rumor."})},
                                  {"light_np", rs({"Lo que tú", "hiciste", "fue", "un rumor."})},
                                  {"heavy_vp", rs({"Lo que tú", "difundiste", "fue", "confirmar un rumor."})},
                                  {"light_vp", rs({"Lo que tú", "hiciste", "fue", "confirmar un rumor."})}}};
  s.grades = {{"heavy_np", 1.0}, {"light_np", 2.0}, {"heavy_vp", 3.0}, {"light_vp", 1.0}};
  return s;
}

// --- Garden Path Effects ----------------------------------------------------

ShippedSuite npz(bool overt_object) {
  std::vector<LexiconEntry> subjects;
  for (const char* w : {"ella", "el niño", "mi padre", "la abogada"}) subjects.push_back(fixed({{"subj", w}}));
  const std::vector<std::array<std::string, 6>> rows = {
      {"leía", "un libro", "dormía", "sus manuscritos", "se volaron", "por la ventana."},
      {"escribía", "un poema", "descansaba", "la carta", "desapareció", "de la mesa."},
      {"pintaba", "un paisaje", "bostezaba", "el retrato", "se cayó", "de la pared."},
      {"cocinaba", "un guiso", "cantaba", "la sopa", "se derramó", "por el suelo."},
      {"lavaba", "los platos", "tosía", "la ropa", "se secó", "al sol."},
  };
  std::vector<LexiconEntry> clauses;
  for (const auto& [verb, obj, intrans, np, mv, rest] : rows) {
    clauses.push_back(fixed({{"verb", verb}, {"obj", obj}, {"iverb", intrans}, {"np", np}, {"mv", mv}, {"rest", rest}}));
  }
  // Condition names: garden path, comma, alternative, alternative with comma.
  const std::array<std::string, 4> names = overt_object
      ? std::array<std::string, 4>{"no_obj_no_comma", "no_obj_comma", "obj_no_comma", "obj_comma"}
      : std::array<std::string, 4>{"trans_no_comma", "trans_comma", "intrans_no_comma", "intrans_comma"};
  const std::string alt = overt_object ? "{verb} {obj}" : "{iverb}";
  auto frame = [](const std::string& clause) {
    return std::vector<std::string>{"Mientras {subj}", clause, "{np}", "{mv}", "{rest}"};
  };

  ShippedSuite s;
  s.slug = overt_object ? "npz_overt_object" : "npz_intransitive_verb";
  s.meta = {overt_object ? "NP/Z Garden Path Effect (Overt Object)" : "NP/Z Garden Path Effect (Intransitive Verb)",
            Circuit::GardenPathEffects, "es", false, std::nullopt};
  s.tmpl.condition_names = {names[0], names[1], names[2], names[3]};
  s.tmpl.region_names = {"subordinator_subject", "subordinate_verb", "ambiguous_np", "main_verb", "continuation"};
  s.tmpl.frames = {{names[0], frame("{verb}")},
                   {names[1], frame("{verb},")},
                   {names[2], frame(alt)},
                   {names[3], frame(alt + ",")}};
  s.tmpl.slots = {group(std::move(subjects)), group(std::move(clauses))};
  s.tmpl.predictions = {cmp(4, names[0], ">", names[1]), cmp(4, names[0], ">", names[2]),
                        "((4;" + names[0] + ") - (4;" + names[1] + ")) > ((4;" + names[2] + ") - (4;" + names[3] + "))"};
  const std::string alt_text = overt_object ? "leía un libro" : "dormía";
  s.tmpl.leading_items = {Example{
      {names[0], rs({"Mientras ella", "leía", "sus manuscritos", "se volaron", "por la ventana."})},
      {names[1], rs({"Mientras ella", "leía,", "sus manuscritos", "se volaron", "por la ventana."})},
      {names[2], rs({"Mientras ella", alt_text, "sus manuscritos", "se volaron", "por la ventana."})},
      {names[3], rs({"Mientras ella", alt_text + ",", "sus manuscritos", "se volaron", "por la ventana."})}}};
  s.grades = {{names[0], 3.0}, {names[1], 1.0}, {names[2], 1.5}, {names[3], 1.0}};
  return s;
}

// --- Licensing --------------------------------------------------------------

ShippedSuite npi_polarity_agreement() {
  const std::vector<std::pair<std::string, std::string>> clauses = {
      {"Yo", "bebo"},      {"Tú", "fumas"},      {"Ella", "miente"},        {"Mi padre", "llora"},
      {"Nosotros", "salimos"}, {"Ellos", "bailan"}, {"Usted", "cocina"},   {"Mi abuela", "conduce"},
      {"Los niños", "gritan"}, {"Vosotras", "cantáis"}};
  std::vector<LexiconEntry> clause_entries, adverbs;
  for (const auto& [subj, verb] : clauses) clause_entries.push_back(fixed({{"subj", subj}, {"verb", verb}}));
  for (const char* npi : {"nunca", "jamás"}) adverbs.push_back(fixed({{"npi", npi}, {"ppi", "siempre"}}));

  ShippedSuite s;
  s.slug = "npi_polarity_agreement";
  s.meta = {"Negative Polarity Items and Polarity Agreement", Circuit::Licensing, "es", false, std::nullopt};
  s.tmpl.condition_names = {"neg_npi", "neg_ppi", "pos_npi", "pos_ppi"};
  s.tmpl.region_names = {"subject", "negation", "verb", "polarity_item"};
  s.tmpl.frames = {{"neg_npi", {"{subj}", "no", "{verb}", "{npi}."}},
                   {"neg_ppi", {"{subj}", "no", "{verb}", "{ppi}."}},
                   {"pos_npi", {"{subj}", "", "{verb}", "{npi}."}},
                   {"pos_ppi", {"{subj}", "", "{verb}", "{ppi}."}}};
  s.tmpl.slots = {group(std::move(clause_entries)), group(std::move(adverbs))};
  s.tmpl.predictions = {cmp(4, "neg_npi", "<", "neg_ppi"), cmp(4, "neg_npi", "<", "pos_npi"),
                        cmp(4, "pos_ppi", "<", "neg_ppi"), cmp(4, "pos_ppi", "<", "pos_npi")};
  s.tmpl.leading_items = {Example{{"neg_npi", rs({"Yo", "no", "bebo", "nunca."})},
                                  {"neg_ppi", rs({"Yo", "no", "bebo", "siempre."})},
                                  {"pos_npi", rs({"Yo", "", "bebo", "nunca."})},
                                  {"pos_ppi", rs({"Yo", "", "bebo", "siempre."})}}};
  s.grades = {{"neg_npi", 1.0}, {"neg_ppi", 2.0}, {"pos_npi", 3.0}, {"pos_ppi", 1.0}};
  return s;
}

ShippedSuite npi_scope() {
  struct Person {
    std::string subj;
    std::size_t form;  // index into verb form tables
    std::string aux;
  };
  const std::vector<Person> persons = {
      {"Tú", 1, "has"}, {"Ella", 2, "ha"}, {"Yo", 0, "he"}, {"Nosotros", 3, "hemos"}, {"Ellos", 4, "han"}};
  struct Reason {
    std::array<std::string, 5> forms;  // 1sg, 2sg, 3sg, 1pl, 3pl
    std::string rest;
    std::string participle, npi;
  };
  const std::vector<Reason> reasons = {
      {{"miraba", "mirabas", "miraba", "mirábamos", "miraban"}, "por la ventana", "visto", "a nadie"},
      {{"estaba", "estabas", "estaba", "estábamos", "estaban"}, "en casa", "oído", "nada"},
      {{"prestaba", "prestabas", "prestaba", "prestábamos", "prestaban"}, "atención", "encontrado", "a nadie"},
      {{"salía", "salías", "salía", "salíamos", "salían"}, "a la calle", "comprado", "nada"},
  };
  std::vector<LexiconEntry> entries;
  for (const Person& p : persons) {
    for (const Reason& r : reasons) {
      entries.push_back(fixed({{"subj", p.subj},
                               {"reason", r.forms[p.form] + " " + r.rest},
                               {"aux", p.aux},
                               {"part", r.participle},
                               {"npi", r.npi}}));
    }
  }
  ShippedSuite s;
  s.slug = "negative_polarity_items";
  s.meta = {"Negative Polarity Items", Circuit::Licensing, "es", false, std::nullopt};
  s.tmpl.condition_names = {"sub_neg_matrix_neg", "sub_neg_matrix_pos", "sub_pos_matrix_neg", "sub_pos_matrix_pos"};
  s.tmpl.region_names = {"subject", "adverbial_clause", "matrix_negation", "verb", "npi"};
  s.tmpl.frames = {{"sub_neg_matrix_neg", {"{subj},", "como no {reason},", "no", "{aux} {part}", "{npi}."}},
                   {"sub_neg_matrix_pos", {"{subj},", "como no {reason},", "", "{aux} {part}", "{npi}."}},
                   {"sub_pos_matrix_neg", {"{subj},", "como {reason},", "no", "{aux} {part}", "{npi}."}},
                   {"sub_pos_matrix_pos", {"{subj},", "como {reason},", "", "{aux} {part}", "{npi}."}}};
  s.tmpl.slots = {group(std::move(entries))};
  s.tmpl.predictions = {cmp(5, "sub_neg_matrix_pos", ">", "sub_neg_matrix_neg"),
                        cmp(5, "sub_pos_matrix_pos", ">", "sub_pos_matrix_neg"),
                        cmp(5, "sub_neg_matrix_pos", ">", "sub_pos_matrix_neg"),
                        cmp(5, "sub_pos_matrix_pos", ">", "sub_neg_matrix_neg")};
  s.tmpl.leading_items = {Example{
      {"sub_neg_matrix_neg", rs({"Tú,", "como no mirabas por la ventana,", "no", "has visto", "a nadie."})},
      {"sub_neg_matrix_pos", rs({"Tú,", "como no mirabas por la ventana,", "", "has visto", "a nadie."})},
      {"sub_pos_matrix_neg", rs({"Tú,", "como mirabas por la ventana,", "no", "has visto", "a nadie."})},
      {"sub_pos_matrix_pos", rs({"Tú,", "como mirabas por la ventana,", "", "has visto", "a nadie."})}}};
  s.grades = {{"sub_neg_matrix_neg", 1.0}, {"sub_neg_matrix_pos", 2.0}, {"sub_pos_matrix_neg", 1.0},
              {"sub_pos_matrix_pos", 2.0}};
  return s;
}

// Embedded clauses shared by the two subjunctive suites: subject, subjunctive
// and indicative forms.
const std::vector<std::array<std::string, 3>> kMoodClauses = {
    {"mañana", "llueva", "lloverá"},
    {"Juan", "venga", "vendrá"},
    {"ellos", "ganen", "ganarán"},
    {"el tren", "llegue", "llegará"},
    {"tú", "estudies", "estudiarás"},
};

ShippedSuite subjunctive_feeling() {
  std::vector<LexiconEntry> mains, clauses;
  for (const auto& [feel, other] : std::vector<std::pair<std::string, std::string>>{
           {"Espero", "Sé"}, {"Deseo", "Digo"}, {"Me alegra", "Afirmo"}, {"Quiero", "Creo"}, {"Me sorprende", "Veo"}}) {
    mains.push_back(fixed({{"feel", feel}, {"other", other}}));
  }
  for (const auto& [who, sub, ind] : kMoodClauses) clauses.push_back(fixed({{"who", who}, {"sub", sub}, {"ind", ind}}));

  ShippedSuite s;
  s.slug = "subjunctive_feeling_verbs";
  s.meta = {"Subjunctive Mood and Verbs that Express Feeling", Circuit::Licensing, "es", false, std::nullopt};
  s.tmpl.condition_names = {"feeling_subj", "feeling_ind", "nonfeeling_subj", "nonfeeling_ind"};
  s.tmpl.region_names = {"main_verb", "complementizer", "embedded_verb"};
  s.tmpl.frames = {{"feeling_subj", {"{feel}", "que {who}", "{sub}."}},
                   {"feeling_ind", {"{feel}", "que {who}", "{ind}."}},
                   {"nonfeeling_subj", {"{other}", "que {who}", "{sub}."}},
                   {"nonfeeling_ind", {"{other}", "que {who}", "{ind}."}}};
  s.tmpl.slots = {group(std::move(mains)), group(std::move(clauses))};
  s.tmpl.predictions = {cmp(3, "feeling_subj", "<", "feeling_ind"), cmp(3, "nonfeeling_subj", ">", "nonfeeling_ind"),
                        cmp(3, "feeling_subj", "<", "nonfeeling_subj")};
  s.tmpl.leading_items = {Example{{"feeling_subj", rs({"Espero", "que mañana", "llueva."})},
                                  {"feeling_ind", rs({"Espero", "que mañana", "lloverá."})},
                                  {"nonfeeling_subj", rs({"Sé", "que mañana", "llueva."})},
                                  {"nonfeeling_ind", rs({"Sé", "que mañana", "lloverá."})}}};
  s.grades = {{"feeling_subj", 1.0}, {"feeling_ind", 2.0}, {"nonfeeling_subj", 2.0}, {"nonfeeling_ind", 1.0}};
  return s;
}

ShippedSuite subjunctive_negation_belief() {
  std::vector<LexiconEntry> beliefs, clauses;
  for (const char* b : {"creo", "pienso", "creemos", "piensan", "cree"}) beliefs.push_back(fixed({{"belief", b}}));
  for (const auto& [who, sub, ind] : kMoodClauses) clauses.push_back(fixed({{"who", who}, {"sub", sub}, {"ind", ind}}));

  ShippedSuite s;
  s.slug = "subjunctive_negation_belief_verbs";
  s.meta = {"Subjunctive Mood, Negation and Belief Verbs", Circuit::Licensing, "es", false, std::nullopt};
  s.tmpl.condition_names = {"main_neg_subj", "main_neg_ind", "sub_neg_subj", "sub_neg_ind"};
  s.tmpl.region_names = {"main_negation", "belief_verb", "complementizer", "embedded_negation", "embedded_verb"};
  s.tmpl.frames = {{"main_neg_subj", {"no", "{belief}", "que {who}", "", "{sub}."}},
                   {"main_neg_ind", {"no", "{belief}", "que {who}", "", "{ind}."}},
                   {"sub_neg_subj", {"", "{belief}", "que {who}", "no", "{sub}."}},
                   {"sub_neg_ind", {"", "{belief}", "que {who}", "no", "{ind}."}}};
  s.tmpl.slots = {group(std::move(beliefs)), group(std::move(clauses))};
  s.tmpl.predictions = {cmp(5, "main_neg_subj", "<", "main_neg_ind"), cmp(5, "sub_neg_subj", ">", "sub_neg_ind"),
                        cmp(5, "main_neg_subj", "<", "sub_neg_subj")};
  s.tmpl.leading_items = {Example{{"main_neg_subj", rs({"No", "creo", "que mañana", "", "llueva."})},
                                  {"main_neg_ind", rs({"No", "creo", "que mañana", "", "lloverá."})},
                                  {"sub_neg_subj", rs({"", "Creo", "que mañana", "no", "llueva."})},
                                  {"sub_neg_ind", rs({"", "Creo", "que mañana", "no", "lloverá."})}}};
  s.grades = {{"main_neg_subj", 1.0}, {"main_neg_ind", 2.0}, {"sub_neg_subj", 3.0}, {"sub_neg_ind", 1.0}};
  return s;
}

// --- Linearization ----------------------------------------------------------

ShippedSuite subject_aux_main() {
  std::vector<LexiconEntry> subjects, participles;
  for (const auto& [subj, aux] : std::vector<std::pair<std::string, std::string>>{
           {"Juan", "ha"}, {"María", "ha"}, {"el niño", "ha"}, {"mi hermana", "ha"}, {"los turistas", "han"}}) {
    subjects.push_back(fixed({{"subj", subj}, {"aux", aux}}));
  }
  for (const char* p : {"comido", "llegado", "salido", "dormido", "ganado"}) participles.push_back(fixed({{"part", p}}));

  ShippedSuite s;
  s.slug = "subject_aux_main_verb_linearization";
  s.meta = {"Subject-Auxiliary Verb-Main Verb Linearization", Circuit::Linearization, "es", false, std::nullopt};
  s.tmpl.condition_names = {"sv_canonical", "vs_postposed", "aux_inverted", "aux_split"};
  s.tmpl.region_names = {"sentence"};
  s.tmpl.frames = {{"sv_canonical", {"{subj} {aux} {part}."}},
                   {"vs_postposed", {"{aux} {part} {subj}."}},
                   {"aux_inverted", {"{subj} {part} {aux}."}},
                   {"aux_split", {"{aux} {subj} {part}."}}};
  s.tmpl.slots = {group(std::move(subjects)), group(std::move(participles))};
  s.tmpl.predictions = {cmp(1, "vs_postposed", "<", "aux_inverted"), cmp(1, "vs_postposed", "<", "aux_split"),
                        cmp(1, "sv_canonical", "<", "vs_postposed"),
                        "((1;vs_postposed) - (1;sv_canonical)) < ((1;aux_inverted) - (1;vs_postposed))",
                        "((1;vs_postposed) - (1;sv_canonical)) < ((1;aux_split) - (1;vs_postposed))"};
  s.tmpl.leading_items = {Example{{"sv_canonical", rs({"Juan ha comido."})},
                                  {"vs_postposed", rs({"Ha comido Juan."})},
                                  {"aux_inverted", rs({"Juan comido ha."})},
                                  {"aux_split", rs({"Ha Juan comido."})}}};
  s.grades = {{"sv_canonical", 1.0}, {"vs_postposed", 1.5}, {"aux_inverted", 3.0}, {"aux_split", 3.0}};
  return s;
}

ShippedSuite subject_verb_object() {
  struct Subject {
    std::string text;
    bool plural;
  };
  const std::vector<Subject> subjects = {
      {"Ana", false}, {"Pedro", false}, {"mi hermano", false}, {"la profesora", false}, {"los niños", true}};
  const std::vector<std::array<std::string, 3>> verbs = {{"compró", "compraron", "un libro"},
                                                         {"leyó", "leyeron", "una novela"},
                                                         {"pintó", "pintaron", "un cuadro"},
                                                         {"cocinó", "cocinaron", "una paella"},
                                                         {"escribió", "escribieron", "una carta"}};
  std::vector<LexiconEntry> entries;
  for (const Subject& subj : subjects) {
    for (const auto& [sg, pl, obj] : verbs) {
      entries.push_back(fixed({{"subj", subj.text}, {"v", subj.plural ? pl : sg}, {"obj", obj}}));
    }
  }
  ShippedSuite s;
  s.slug = "subject_verb_object_linearization";
  s.meta = {"Subject-Verb-Object Linearization", Circuit::Linearization, "es", false, std::nullopt};
  s.tmpl.condition_names = {"decl_svo", "decl_vos", "interrog_vs", "interrog_sv"};
  s.tmpl.region_names = {"sentence"};
  s.tmpl.frames = {{"decl_svo", {"{subj} {v} {obj}."}},
                   {"decl_vos", {"{v} {obj} {subj}."}},
                   {"interrog_vs", {"¿Qué {v} {subj}?"}},
                   {"interrog_sv", {"¿Qué {subj} {v}?"}}};
  s.tmpl.slots = {group(std::move(entries))};
  s.tmpl.predictions = {cmp(1, "decl_vos", "<", "interrog_sv"), cmp(1, "decl_svo", "<", "decl_vos"),
                        "((1;decl_vos) - (1;decl_svo)) < ((1;interrog_sv) - (1;decl_vos))"};
  s.tmpl.leading_items = {Example{{"decl_svo", rs({"Ana compró un libro."})},
                                  {"decl_vos", rs({"Compró un libro Ana."})},
                                  {"interrog_vs", rs({"¿Qué compró Ana?"})},
                                  {"interrog_sv", rs({"¿Qué Ana compró?"})}}};
  s.grades = {{"decl_svo", 1.0}, {"decl_vos", 1.5}, {"interrog_vs", 1.0}, {"interrog_sv", 3.0}};
  return s;
}

ShippedSuite noun_adjective_pp() {
  std::vector<LexiconEntry> verbs, nouns;
  for (const char* v : {"Construyó", "Compró", "Vendió", "Diseñó", "Encargó"}) verbs.push_back(fixed({{"verb", v}}));
  for (const auto& row : std::vector<std::array<std::string, 4>>{{"una", "mesa", "robusta", "de madera"},
                                                                 {"una", "casa", "bonita", "de piedra"},
                                                                 {"una", "camisa", "elegante", "de seda"},
                                                                 {"un", "vaso", "precioso", "de cristal"},
                                                                 {"una", "puerta", "pesada", "de hierro"}}) {
    nouns.push_back(fixed({{"det", row[0]}, {"noun", row[1]}, {"adj", row[2]}, {"pp", row[3]}}));
  }
  ShippedSuite s;
  s.slug = "noun_adjective_pp_linearization";
  s.meta = {"Noun-Adjective and Noun-PP Linearization", Circuit::Linearization, "es", false, std::nullopt};
  s.tmpl.condition_names = {"noun_adj", "adj_noun", "noun_pp", "pp_noun"};
  s.tmpl.region_names = {"verb", "noun_phrase"};
  s.tmpl.frames = {{"noun_adj", {"{verb}", "{det} {noun} {adj}."}},
                   {"adj_noun", {"{verb}", "{det} {adj} {noun}."}},
                   {"noun_pp", {"{verb}", "{det} {noun} {pp}."}},
                   {"pp_noun", {"{verb}", "{det} {pp} {noun}."}}};
  s.tmpl.slots = {group(std::move(verbs)), group(std::move(nouns))};
  s.tmpl.predictions = {cmp(2, "pp_noun", ">", "noun_pp"), cmp(2, "adj_noun", ">", "noun_adj"),
                        "((2;adj_noun) - (2;noun_adj)) < ((2;pp_noun) - (2;noun_pp))"};
  s.tmpl.leading_items = {Example{{"noun_adj", rs({"Construyó", "una mesa robusta."})},
                                  {"adj_noun", rs({"Construyó", "una robusta mesa."})},
                                  {"noun_pp", rs({"Construyó", "una mesa de madera."})},
                                  {"pp_noun", rs({"Construyó", "una de madera mesa."})}}};
  s.grades = {{"noun_adj", 1.0}, {"adj_noun", 1.5}, {"noun_pp", 1.0}, {"pp_noun", 3.0}};
  return s;
}

std::vector<ShippedSuite> build_definitions() {
  return {
      basic_subject_verb(),
      subject_verb_with_rc(false),
      subject_verb_with_rc(true),
      determiner_noun(),
      adjective_noun(),
      attribute(AttributeModifier::None),
      attribute(AttributeModifier::ObjectRc),
      attribute(AttributeModifier::SubjectRc),
      predicative(),
      center_embedding(false),
      center_embedding(true),
      subordination(SubordinationModifier::None),
      subordination(SubordinationModifier::ObjectRc),
      subordination(SubordinationModifier::SubjectRc),
      filler_gap(false),
      filler_gap(true),
      pseudo_cleft(),
      npz(true),
      npz(false),
      npi_polarity_agreement(),
      npi_scope(),
      subjunctive_feeling(),
      subjunctive_negation_belief(),
      subject_aux_main(),
      subject_verb_object(),
      noun_adjective_pp(),
  };
}

// --- fixtures ---------------------------------------------------------------

FixtureSuite tie_fixture() {
  std::vector<LexiconEntry> entries;
  for (const auto& [subj, sg, pl, rest] : std::vector<std::array<std::string, 4>>{
           {"The girl", "runs", "run", "fast."},      {"The dog", "barks", "bark", "loudly."},
           {"My friend", "sings", "sing", "well."},   {"The teacher", "writes", "write", "slowly."},
           {"The baby", "sleeps", "sleep", "late."},  {"His uncle", "cooks", "cook", "daily."},
           {"The pilot", "flies", "fly", "north."},   {"Her cat", "jumps", "jump", "high."},
           {"The actor", "smiles", "smile", "often."}, {"Our boss", "works", "work", "hard."},
       }) {
    entries.push_back({{{"subj", all(subj)}, {"verb", {{"match", sg}, {"mismatch", pl}}}, {"rest", all(rest)}}});
  }
  SuiteTemplate t;
  t.condition_names = {"match", "mismatch"};
  t.region_names = {"subject", "verb", "continuation"};
  t.frames = {{"*", {"{subj}", "{verb}", "{rest} {mod}"}}};
  t.slots = {group(entries), group({fixed({{"mod", ""}}), fixed({{"mod", "today"}})})};
  t.predictions = {cmp(2, "match", "<", "mismatch")};
  SuiteMeta meta{"Tie Fixture", Circuit::Agreement, "en", false, std::nullopt};
  return {"fixtures/tie_fixture.json", expand_template(t, meta), {{"match", 1.0}, {"mismatch", 2.0}}};
}

FixtureSuite toy_fixture() {
  // Built from the toy corpus vocabulary; sentences need not occur in it.
  std::vector<LexiconEntry> entries;
  for (const auto& [subj, sg, pl, rest] : std::vector<std::array<std::string, 4>>{
           {"El perro", "come", "comen", "pan."},          {"La niña", "lee", "leen", "un libro."},
           {"El gato", "duerme", "duermen", "mucho."},      {"Mi hermano", "bebe", "beben", "agua."},
           {"La profesora", "escribe", "escriben", "una carta."}, {"El niño", "corre", "corren", "en el parque."},
           {"Los perros", "comen", "come", "pan."},          {"Las niñas", "leen", "lee", "un libro."},
           {"Los gatos", "duermen", "duerme", "mucho."},      {"Mis hermanos", "beben", "bebe", "agua."},
           {"Los niños", "corren", "corre", "en el parque."}, {"Las profesoras", "escriben", "escribe", "una carta."},
       }) {
    entries.push_back({{{"subj", all(subj)}, {"verb", {{"match", sg}, {"mismatch", pl}}}, {"rest", all(rest)}}});
  }
  SuiteTemplate t;
  t.condition_names = {"match", "mismatch"};
  t.region_names = {"subject", "verb", "continuation"};
  t.frames = {{"*", {"{subj}", "{verb}", "{rest}"}}};
  t.mode = ExpansionMode::Zip;
  t.slots = {group(entries)};
  t.predictions = {cmp(2, "match", "<", "mismatch"), "(2;match) + (3;match) < (2;mismatch) + (3;mismatch)"};
  SuiteMeta meta{"Toy N-gram Fixture", Circuit::Agreement, "es", false, std::nullopt};
  return {"fixtures/toy_ngram_fixture.json", expand_template(t, meta), {{"match", 1.0}, {"mismatch", 2.0}}};
}

}  // namespace

std::string ShippedSuite::relative_path() const {
  return meta.language + "/" + std::string(circuit_id(meta.circuit)) + "/" + slug + ".json";
}

const std::vector<ShippedSuite>& shipped_suite_definitions() {
  static const std::vector<ShippedSuite> defs = build_definitions();
  return defs;
}

std::vector<TestSuite> shipped_suites() {
  std::vector<TestSuite> out;
  for (const ShippedSuite& d : shipped_suite_definitions()) out.push_back(d.build());
  return out;
}

std::vector<CatalogEntry> list_shipped_suites() {
  std::vector<CatalogEntry> out;
  for (const ShippedSuite& d : shipped_suite_definitions()) {
    const TestSuite s = d.build();
    out.push_back({s.name, s.circuit, s.language, s.has_modifier, s.modifier_pair_id, s.items.size(), d.relative_path()});
  }
  return out;
}

const std::vector<FixtureSuite>& fixture_suites() {
  static const std::vector<FixtureSuite> fixtures = {tie_fixture(), toy_fixture()};
  return fixtures;
}

std::shared_ptr<LookupScorer> build_oracle(const TestSuite& suite, const ConditionGrades& grades, bool inverted) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const std::string& c : suite.condition_names) {
    auto it = grades.find(c);
    if (it == grades.end()) throw InconsistentLexiconError("no grade for condition '" + c + "'");
    lo = first ? it->second : std::min(lo, it->second);
    hi = first ? it->second : std::max(hi, it->second);
    first = false;
  }
  auto oracle = std::make_shared<LookupScorer>(inverted ? "inverted-oracle" : "oracle");
  for (const Item& item : suite.items) {
    for (const auto& [condition, sentence] : item.sentences) {
      const double g = grades.at(condition);
      try {
        oracle->add(render_sentence(sentence).text, inverted ? hi + lo - g : g);
      } catch (const std::invalid_argument&) {
        throw InconsistentLexiconError("suite '" + suite.name + "', item " + std::to_string(item.index) +
                                       ": sentence repeated under conditions with different grades");
      }
    }
  }
  return oracle;
}

std::optional<ConditionGrades> grades_for(const TestSuite& suite) {
  for (const ShippedSuite& d : shipped_suite_definitions()) {
    if (d.meta.name == suite.name && d.meta.language == suite.language) return d.grades;
  }
  for (const FixtureSuite& f : fixture_suites()) {
    if (f.suite.name == suite.name && f.suite.language == suite.language) return f.grades;
  }
  return std::nullopt;
}

}  // namespace syngauntlet
