// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "movi/config.hpp"
#include "movi/trajectory.hpp"

namespace movi {

/// Sends one chat-completion request and returns the raw JSON response body.
/// Throws on transport failure (any exception type); the retry loop catches
/// and retries up to max_retries extra attempts. The default transport POSTs
/// `{base_url}/chat/completions` with a bearer token when an api_key is set.
using ChatTransport = std::function<std::string(const LlmSettings&, const std::string& request_body)>;

/// Builds the request body: messages = [user], the configured model and
/// temperature (0 by default so planning stays reproducible).
std::string build_chat_request(const LlmSettings& endpoint, const std::string& user_message);

/// Full round trip: request -> retries -> extract choices[0].message.content.
/// EndpointError after max_retries consecutive transport failures or on a
/// response that carries no content; EmptyPlanError when the content is empty.
std::string chat_complete(const LlmSettings& endpoint, const std::string& user_message,
                          const ChatTransport& transport = {});

/// Sends the rendered planner prompt and returns the assistant text unmodified.
std::string request_trajectories(const LlmSettings& endpoint, const std::string& prompt_text,
                                 const ChatTransport& transport = {});

/// Renders the judge prompt for (scene_prompt, tracks), sends it, and parses
/// the first number in [0, 10] from the reply.
double score_trajectory_llm(const LlmSettings& endpoint, const std::string& scene_prompt,
                            const std::vector<BoxTrack>& tracks, const ChatTransport& transport = {});

}  // namespace movi
