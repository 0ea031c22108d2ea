#include "polaris/llm/backend.hpp"

namespace polaris::llm {

void ChatRequest::validate() const {
  if (messages.empty()) throw ParameterError("chat request '" + tag + "' has no messages");
  if (n_responses < 1) throw ParameterError("chat request '" + tag + "': n_responses must be >= 1");
  if (!(temperature >= 0.0)) throw ParameterError("chat request '" + tag + "': temperature must be >= 0");
  for (const auto& m : messages) {
    if (m.role != "system" && m.role != "user" && m.role != "assistant") {
      throw ParameterError("chat request '" + tag + "': unknown message role '" + m.role + "'");
    }
  }
}

ChatResponse chat(Backend& backend, const ChatRequest& request) {
  request.validate();
  ChatResponse resp = backend.complete(request);
  if (resp.texts.size() != static_cast<std::size_t>(request.n_responses)) {
    throw BackendError("backend returned " + std::to_string(resp.texts.size()) + " response(s) for '" +
                       request.tag + "', expected " + std::to_string(request.n_responses));
  }
  return resp;
}

ChatRequest make_request(std::string system, std::string user, std::string tag, double temperature, int n) {
  ChatRequest r;
  if (!system.empty()) r.messages.push_back({"system", std::move(system)});
  r.messages.push_back({"user", std::move(user)});
  r.tag = std::move(tag);
  r.temperature = temperature;
  r.n_responses = n;
  return r;
}

Json to_json(const ChatRequest& r) {
  Json msgs = Json::array();
  for (const auto& m : r.messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  return Json{{"tag", r.tag}, {"model", r.model}, {"temperature", r.temperature}, {"n", r.n_responses},
              {"messages", msgs}};
}

Json to_json(const ChatResponse& r) {
  Json j{{"texts", r.texts}};
  if (r.usage) {
    j["usage"] = {{"prompt_tokens", r.usage->prompt_tokens}, {"completion_tokens", r.usage->completion_tokens}};
  }
  return j;
}

}  // namespace polaris::llm
