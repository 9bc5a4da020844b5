#include "unialign/pnml.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "unialign/error.hpp"
#include "xml.hpp"

namespace unialign {

namespace {

std::uint32_t parse_count(const std::string& text, const xml::Element& where, const char* what) {
  if (text.empty()) return 0;
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 0 || value > 0xFFFFFFFFLL) {
    throw SemanticError(std::string("invalid ") + what + " '" + text + "' at line " + std::to_string(where.line));
  }
  return static_cast<std::uint32_t>(value);
}

bool is_invisible(const xml::Element& transition) {
  for (const xml::Element* ts : transition.children_named("toolspecific")) {
    if (const std::string* activity = ts->attribute("activity"); activity && *activity == "$invisible$") {
      return true;
    }
  }
  return false;
}

void collect_nodes(const xml::Element& container, std::vector<const xml::Element*>& places,
                   std::vector<const xml::Element*>& transitions, std::vector<const xml::Element*>& arcs,
                   std::vector<std::string>* warnings, int depth) {
  static const std::set<std::string> known = {"name", "graphics", "toolspecific", "finalmarkings",
                                              "variables", "type"};
  for (const auto& child : container.children) {
    if (child->name == "place") {
      places.push_back(child.get());
    } else if (child->name == "transition") {
      transitions.push_back(child.get());
    } else if (child->name == "arc") {
      arcs.push_back(child.get());
    } else if (child->name == "page") {
      if (depth > 0 && warnings) warnings->push_back("nested page flattened at line " + std::to_string(child->line));
      collect_nodes(*child, places, transitions, arcs, warnings, depth + 1);
    } else if (!known.contains(child->name) && warnings) {
      warnings->push_back("ignored element <" + child->name + "> at line " + std::to_string(child->line));
    }
  }
}

}  // namespace

PetriNet parse_pnml(std::string_view document, std::vector<std::string>* warnings) {
  auto root = xml::parse(document);
  const xml::Element* net = root->name == "net" ? root.get() : root->child("net");
  if (net == nullptr) throw SemanticError("PNML document has no <net> element");
  if (warnings && root->children_named("net").size() > 1) warnings->push_back("only the first <net> is read");

  std::vector<const xml::Element*> places, transitions, arcs;
  collect_nodes(*net, places, transitions, arcs, warnings, 0);

  PetriNetBuilder builder;
  std::uint64_t initial_tokens = 0;
  for (const xml::Element* p : places) {
    const std::string* id = p->attribute("id");
    if (id == nullptr) throw SemanticError("place without id at line " + std::to_string(p->line));
    const std::uint32_t tokens = parse_count(p->nested_text("initialMarking"), *p, "initial marking");
    initial_tokens += tokens;
    builder.add_place(*id, tokens);
  }
  for (const xml::Element* t : transitions) {
    const std::string* id = t->attribute("id");
    if (id == nullptr) throw SemanticError("transition without id at line " + std::to_string(t->line));
    const std::string name = t->nested_text("name");
    builder.add_transition(*id, (name.empty() || is_invisible(*t)) ? Label::tau() : Label::activity(name));
  }

  std::set<std::string> has_input;
  std::set<std::string> has_output;
  for (const xml::Element* a : arcs) {
    const std::string* source = a->attribute("source");
    const std::string* target = a->attribute("target");
    if (source == nullptr || target == nullptr) {
      throw SemanticError("arc without source/target at line " + std::to_string(a->line));
    }
    for (const std::string* endpoint : {source, target}) {
      if (!builder.has_place(*endpoint) && !builder.has_transition(*endpoint)) {
        throw SemanticError("arc at line " + std::to_string(a->line) + " references unknown node '" + *endpoint + "'");
      }
    }
    const std::string inscription = a->nested_text("inscription");
    const std::uint32_t weight = inscription.empty() ? 1 : parse_count(inscription, *a, "arc weight");
    builder.add_arc(*source, *target, weight);
    if (builder.has_place(*source)) has_output.insert(*source);
    if (builder.has_place(*target)) has_input.insert(*target);
  }

  if (initial_tokens == 0) throw SemanticError("no place carries an initial token");

  bool final_given = false;
  if (const xml::Element* finals = net->child("finalmarkings")) {
    if (const xml::Element* marking = finals->child("marking")) {
      for (const xml::Element* p : marking->children_named("place")) {
        const std::string* idref = p->attribute("idref");
        if (idref == nullptr) throw SemanticError("final marking entry without idref at line " + std::to_string(p->line));
        const std::uint32_t tokens = parse_count(p->nested_text("text"), *p, "final marking");
        builder.set_final(*idref, tokens);
        final_given = final_given || tokens > 0;
      }
    }
  }
  if (!final_given) {
    bool any_sink = false;
    for (const xml::Element* p : places) {
      const std::string& id = *p->attribute("id");
      if (has_input.contains(id) && !has_output.contains(id)) {
        builder.set_final(id, 1);
        any_sink = true;
      }
    }
    if (!any_sink) throw SemanticError("no final marking given and no sink place to infer it from");
    if (warnings) warnings->push_back("final marking inferred from sink places");
  }
  return builder.build();
}

PetriNet read_pnml_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pnml(buffer.str(), warnings);
}

std::string write_pnml(const PetriNet& net, std::string_view net_id, const std::vector<std::string>* transition_notes) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<pnml>\n";
  out << "  <net id=\"" << xml::escape(net_id) << "\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n";
  out << "    <page id=\"page0\">\n";
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    out << "      <place id=\"" << xml::escape(net.places()[p]) << "\">\n";
    out << "        <name><text>" << xml::escape(net.places()[p]) << "</text></name>\n";
    if (net.initial_marking()[p] > 0) {
      out << "        <initialMarking><text>" << net.initial_marking()[p] << "</text></initialMarking>\n";
    }
    out << "      </place>\n";
  }
  for (std::size_t t = 0; t < net.num_transitions(); ++t) {
    out << "      <transition id=\"" << xml::escape(net.transitions()[t]) << "\">\n";
    if (net.label(t).is_tau()) {
      out << "        <toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\"/>\n";
    } else {
      out << "        <name><text>" << xml::escape(net.label(t).name()) << "</text></name>\n";
    }
    if (transition_notes != nullptr && t < transition_notes->size()) {
      out << "        <toolspecific tool=\"unialign\" note=\"" << xml::escape((*transition_notes)[t]) << "\"/>\n";
    }
    out << "      </transition>\n";
  }
  std::size_t arc_no = 0;
  for (const Arc& a : net.arcs()) {
    const bool to_t = a.direction == ArcDirection::PlaceToTransition;
    const std::string& source = to_t ? net.places()[a.place] : net.transitions()[a.transition];
    const std::string& target = to_t ? net.transitions()[a.transition] : net.places()[a.place];
    out << "      <arc id=\"a" << arc_no++ << "\" source=\"" << xml::escape(source) << "\" target=\""
        << xml::escape(target) << "\">";
    if (a.weight != 1) out << "<inscription><text>" << a.weight << "</text></inscription>";
    out << "</arc>\n";
  }
  out << "    </page>\n";
  out << "    <finalmarkings>\n      <marking>\n";
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    if (net.final_marking()[p] > 0) {
      out << "        <place idref=\"" << xml::escape(net.places()[p]) << "\"><text>" << net.final_marking()[p]
          << "</text></place>\n";
    }
  }
  out << "      </marking>\n    </finalmarkings>\n";
  out << "  </net>\n</pnml>\n";
  return out.str();
}

bool same_net(const PetriNet& a, const PetriNet& b) {
  return a.places() == b.places() && a.transitions() == b.transitions() && a.labels() == b.labels() &&
         a.arcs() == b.arcs() && a.initial_marking() == b.initial_marking() &&
         a.final_marking() == b.final_marking();
}

}  // namespace unialign
