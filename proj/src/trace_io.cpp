#include "akb/trace_io.hpp"

#include <json.hpp>
#include <ostream>

#include "akb/parser.hpp"

namespace akb {

namespace {

using nlohmann::json;

json theta_json(const Substitution& theta) {
  json bindings = json::object();
  for (const auto& [var, value] : theta.bindings)
    bindings[var] = json{{value.is_var() ? "var" : "literal", value.name}};
  return bindings;
}

std::string theta_text(const Substitution& theta) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : theta.bindings) {
    if (!first) out += ", ";
    first = false;
    out += var + "->" + (value.is_var() ? "?" + value.name : value.name);
  }
  return out + "}";
}

}  // namespace

std::string event_json(const TraceEvent& ev, const Lattice& lattice) {
  json j;
  j["step"] = ev.step;
  j["redex"] = ev.redex;
  j["subject"] = ev.subject;
  j["subject_uid"] = ev.subject_uid;
  j["origin_uid"] = ev.origin_uid;
  j["unfold"] = ev.unfold;
  j["branch"] = ev.branch;
  j["kind"] = std::string(to_string(ev.kind));
  j["args"] = ev.args;
  j["target"] = ev.target;
  j["target_uid"] = ev.target_uid;
  j["decision"] = std::string(to_string(ev.decision));
  j["granted"] = ev.granted;
  j["enabled"] = ev.enabled;
  j["theta"] = ev.theta ? theta_json(*ev.theta) : json(nullptr);
  j["state_updates"] = json::array();
  for (const auto& u : ev.state_updates)
    j["state_updates"].push_back({{"location", u.location},
                                  {"uid", u.uid},
                                  {"old_history", lattice.name(u.old_history)},
                                  {"new_history", lattice.name(u.new_history)}});
  j["created_items"] = json::array();
  for (const auto& c : ev.created_items)
    j["created_items"].push_back(
        {{"uid", c.uid}, {"name", c.name}, {"parent", c.parent}, {"reason", c.reason}});
  j["removed_items"] = ev.removed_items;
  if (ev.forced) j["forced"] = true;
  return j.dump();
}

std::string event_text(const TraceEvent& ev, const Lattice& lattice) {
  std::string out = "#" + std::to_string(ev.step) + " " + ev.subject + "#" +
                    std::to_string(ev.subject_uid) + " " + std::string(to_string(ev.kind)) +
                    "(";
  for (std::size_t i = 0; i < ev.args.size(); ++i) out += (i ? ", " : "") + ev.args[i];
  out += ")@" + ev.target + "#" + std::to_string(ev.target_uid) + "  " +
         std::string(to_string(ev.decision)) + " ";
  if (!ev.granted)
    out += "DENIED";
  else if (!ev.enabled)
    out += "NOT-ENABLED";
  else
    out += ev.forced ? "FORCED" : "granted";
  if (ev.theta && !ev.theta->bindings.empty()) out += " theta=" + theta_text(*ev.theta);
  for (const auto& u : ev.state_updates)
    out += " H(" + u.location + "#" + std::to_string(u.uid) + ")=" +
           lattice.name(u.old_history) + "->" + lattice.name(u.new_history);
  for (const auto& c : ev.created_items)
    out += " +" + c.name + "#" + std::to_string(c.uid) + "(" + c.reason + ")";
  for (auto uid : ev.removed_items) out += " -#" + std::to_string(uid);
  return out;
}

void write_trace(std::ostream& os, const Trace& trace, TraceFormat format) {
  const Lattice& lat = *trace.initial.lattice;
  for (const auto& ev : trace.events)
    os << (format == TraceFormat::JsonLines ? event_json(ev, lat) : event_text(ev, lat))
       << '\n';
}

}  // namespace akb
