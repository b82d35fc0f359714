// SPDX-License-Identifier: Apache-2.0
#include "movi/llm.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace movi {

namespace {

using nlohmann::json;

// "http://host:port/v1" -> origin "http://host:port", path prefix "/v1".
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
    const std::size_t scheme = base_url.find("://");
    if (scheme == std::string::npos)
        throw EndpointError("base url '" + base_url + "' has no scheme; expected http(s)://host[:port][/path]");
    const std::size_t path = base_url.find('/', scheme + 3);
    if (path == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path), prefix};
}

std::string http_transport(const LlmSettings& endpoint, const std::string& request_body) {
    const auto [origin, prefix] = split_base_url(endpoint.base_url);
    httplib::Client client(origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!endpoint.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint.api_key);
    auto res = client.Post(prefix + "/chat/completions", headers, request_body, "application/json");
    if (!res) throw std::runtime_error("transport failure: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw std::runtime_error("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body);
    return res->body;
}

}  // namespace

std::string build_chat_request(const LlmSettings& endpoint, const std::string& user_message) {
    json body{
        {"model", endpoint.model},
        {"temperature", endpoint.temperature},
        {"messages", json::array({json{{"role", "user"}, {"content", user_message}}})},
    };
    return body.dump();
}

std::string chat_complete(const LlmSettings& endpoint, const std::string& user_message,
                          const ChatTransport& transport) {
    if (endpoint.base_url.empty() && !transport)
        throw EndpointError("no LLM endpoint configured (set llm.base_url or MOVI_LLM_BASE_URL)");
    const ChatTransport& send = transport ? transport : ChatTransport(http_transport);
    const std::string request_body = build_chat_request(endpoint, user_message);

    std::string response_body;
    std::string last_error;
    const int attempts = 1 + std::max(0, endpoint.max_retries);
    bool got_response = false;
    for (int attempt = 0; attempt < attempts && !got_response; ++attempt) {
        try {
            response_body = send(endpoint, request_body);
            got_response = true;
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    if (!got_response)
        throw EndpointError("chat completion failed after " + std::to_string(attempts) +
                            " attempts: " + last_error);

    json parsed;
    try {
        parsed = json::parse(response_body);
    } catch (const json::exception& e) {
        throw EndpointError(std::string("malformed chat completion response: ") + e.what());
    }
    if (!parsed.contains("choices") || !parsed["choices"].is_array() || parsed["choices"].empty())
        throw EndpointError("chat completion response has no choices");
    const json& message = parsed["choices"][0].value("message", json::object());
    if (!message.contains("content") || !message["content"].is_string())
        throw EndpointError("chat completion response has no message content");
    const std::string content = message["content"].get<std::string>();
    if (content.empty()) throw EmptyPlanError("chat completion returned an empty message");
    return content;
}

std::string request_trajectories(const LlmSettings& endpoint, const std::string& prompt_text,
                                 const ChatTransport& transport) {
    return chat_complete(endpoint, prompt_text, transport);
}

double score_trajectory_llm(const LlmSettings& endpoint, const std::string& scene_prompt,
                            const std::vector<BoxTrack>& tracks, const ChatTransport& transport) {
    const std::string reply = chat_complete(endpoint, build_judge_prompt(scene_prompt, tracks), transport);
    return parse_judge_score(reply);
}

}  // namespace movi
