// SPDX-License-Identifier: Apache-2.0
#include "movi/trajectory.hpp"

// Canned planner transcripts: real chat-completion outputs for eight prompts,
// kept verbatim (prose asides, negative coordinates, a 32-point disobedient
// answer to a 16-frame request). They double as the default few-shot pool for
// `movi plan` and as parser fixtures.

namespace movi {

namespace {

const FewshotExample kPool[] = {
    {"A cat and a dog running.",
     R"(Here's a possible trajectory for the cat and dog:
Cat:
(1, 10, 20) (2, 15, 22) (3, 20, 25) (4, 25, 28) (5, 30, 30) (6, 35, 32) (7, 40, 35) (8, 45, 38) (9, 50, 40) (10, 55, 42) (11, 60, 45) (12, 65, 48) (13, 70, 50) (14, 75, 52) (15, 80, 55) (16, 85, 58)
Dog:
(1, 50, 10) (2, 45, 12) (3, 40, 15) (4, 35, 18) (5, 30, 20) (6, 25, 22) (7, 20, 25) (8, 15, 28) (9, 10, 30) (10, 5, 32) (11, 0, 35) (12, -5, 38) (13, -10, 40) (14, -15, 42) (15, -20, 45) (16, -25, 48)
In this trajectory, the cat starts at the top left (10, 20) and moves diagonally down to the right, while the dog starts at the middle right (50, 10) and moves diagonally up to the left. The coordinates are just examples and can be adjusted to fit the specific animation or video.)"},
    {"A cat and a dog fighting.",
     R"(Here's a possible trajectory for the cat and dog:
Cat:
(1, 40, 40) (2, 42, 38) (3, 45, 35) (4, 48, 32) (5, 50, 30) (6, 52, 28) (7, 55, 25) (8, 58, 22) (9, 60, 20) (10, 62, 18) (11, 60, 20) (12, 58, 22) (13, 55, 25) (14, 52, 28) (15, 50, 30) (16, 48, 32)
Dog:
(1, 60, 60) (2, 58, 62) (3, 55, 65) (4, 52, 68) (5, 50, 70) (6, 48, 72) (7, 45, 75) (8, 42, 78) (9, 40, 80) (10, 38, 82) (11, 40, 80) (12, 42, 78) (13, 45, 75) (14, 48, 72) (15, 50, 70) (16, 52, 68)
In this trajectory, the cat starts at the middle left (40, 40) and moves in a circular motion, as if swiping at the dog. The dog starts at the middle right (60, 60) and also moves in a circular motion, as if swiping back at the cat. The coordinates are just examples and can be adjusted to fit the specific animation or video.)"},
    {"A man and a woman skydiving.",
     R"(Here's a possible trajectory for the man and woman:
Man:
(1, 50, 100) (2, 52, 95) (3, 55, 90) (4, 58, 85) (5, 60, 80) (6, 62, 75) (7, 65, 70) (8, 68, 65) (9, 70, 60) (10, 72, 55) (11, 75, 50) (12, 78, 45) (13, 80, 40) (14, 82, 35) (15, 85, 30) (16, 88, 25)
Woman:
(1, 70, 100) (2, 68, 95) (3, 65, 90) (4, 62, 85) (5, 60, 80) (6, 58, 75) (7, 55, 70) (8, 52, 65) (9, 50, 60) (10, 48, 55) (11, 45, 50) (12, 42, 45) (13, 40, 40) (14, 38, 35) (15, 35, 30) (16, 32, 25)
In this trajectory, the man and woman start at the top of the frame (100) and move downwards, as if skydiving. The man moves slightly to the right, while the woman moves slightly to the left, as if they are falling together but spreading out horizontally. The coordinates are just examples and can be adjusted to fit the specific animation or video.)"},
    {"A frog jumping and rat sitting.",
     R"(Here's a possible trajectory for the frog and rat:
Frog:
(1, 40, 80) (2, 42, 75) (3, 45, 70) (4, 50, 65) (5, 55, 60) (6, 60, 55) (7, 65, 50) (8, 70, 45) (9, 75, 40) (10, 80, 35) (11, 85, 30) (12, 80, 35) (13, 75, 40) (14, 70, 45) (15, 65, 50) (16, 60, 55)
Rat:
(1, 80, 20) (2, 80, 20) (3, 80, 20) (4, 80, 20) (5, 80, 20) (6, 80, 20) (7, 80, 20) (8, 80, 20) (9, 80, 20) (10, 80, 20) (11, 80, 20) (12, 80, 20) (13, 80, 20) (14, 80, 20) (15, 80, 20) (16, 80, 20)
In this trajectory, the frog starts at the middle left (40, 80) and jumps in an arc, landing at the middle right (60, 55). The rat remains stationary at the bottom right (80, 20) throughout the 16 frames. The coordinates are just examples and can be adjusted to fit the specific animation or video.)"},
    {"Three dogs playing in the field.",
     R"(Here's a possible trajectory for the three dogs:
Dog 1:
(1, 20, 40) (2, 25, 35) (3, 30, 30) (4, 35, 25) (5, 40, 20) (6, 45, 15) (7, 50, 10) (8, 55, 5) (9, 50, 10) (10, 45, 15) (11, 40, 20) (12, 35, 25) (13, 30, 30) (14, 25, 35) (15, 20, 40) (16, 15, 45)
Dog 2:
(1, 60, 20) (2, 55, 25) (3, 50, 30) (4, 45, 35) (5, 40, 40) (6, 35, 45) (7, 30, 50) (8, 25, 55) (9, 30, 50) (10, 35, 45) (11, 40, 40) (12, 45, 35) (13, 50, 30) (14, 55, 25) (15, 60, 20) (16, 65, 15)
Dog 3:
(1, 40, 80) (2, 45, 75) (3, 50, 70) (4, 55, 65) (5, 60, 60) (6, 65, 55) (7, 70, 50) (8, 75, 45) (9, 70, 50) (10, 65, 55) (11, 60, 60) (12, 55, 65) (13, 50, 70) (14, 45, 75) (15, 40, 80) (16, 35, 85)
In this trajectory, the three dogs move around the field in different paths, as if playing together. Dog 1 moves in a circular motion, Dog 2 moves in a zig-zag pattern, and Dog 3 moves in a figure-eight pattern. The coordinates are just examples and can be adjusted to fit the specific animation or video.)"},
    {"Three dogs playing and three cats watching.",
     R"(Here's a possible trajectory for the 3 dogs and 3 cats:
Dog 1:
(1, 20, 40) (2, 25, 35) (3, 30, 30) (4, 35, 25) (5, 40, 20) (6, 45, 15) (7, 50, 10) (8, 55, 5) (9, 50, 10) (10, 45, 15) (11, 40, 20) (12, 35, 25) (13, 30, 30) (14, 25, 35) (15, 20, 40) (16, 15, 45)
Dog 2:
(1, 60, 20) (2, 55, 25) (3, 50, 30) (4, 45, 35) (5, 40, 40) (6, 35, 45) (7, 30, 50) (8, 25, 55) (9, 30, 50) (10, 35, 45) (11, 40, 40) (12, 45, 35) (13, 50, 30) (14, 55, 25) (15, 60, 20) (16, 65, 15)
Dog 3:
(1, 40, 80) (2, 45, 75) (3, 50, 70) (4, 55, 65) (5, 60, 60) (6, 65, 55) (7, 70, 50) (8, 75, 45) (9, 70, 50) (10, 65, 55) (11, 60, 60) (12, 55, 65) (13, 50, 70) (14, 45, 75) (15, 40, 80) (16, 35, 85)
Cat 1:
(1, 80, 40) (2, 80, 40) (3, 80, 40) (4, 80, 40) (5, 80, 40) (6, 80, 40) (7, 80, 40) (8, 80, 40) (9, 80, 40) (10, 80, 40) (11, 80, 40) (12, 80, 40) (13, 80, 40) (14, 80, 40) (15, 80, 40) (16, 80, 40)
Cat 2:
(1, 90, 60) (2, 90, 60) (3, 90, 60) (4, 90, 60) (5, 90, 60) (6, 90, 60) (7, 90, 60) (8, 90, 60) (9, 90, 60) (10, 90, 60) (11, 90, 60) (12, 90, 60) (13, 90, 60) (14, 90, 60) (15, 90, 60) (16, 90, 60)
Cat 3:
(1, 70, 90) (2, 70, 90) (3, 70, 90) (4, 70, 90) (5, 70, 90) (6, 70, 90) (7, 70, 90) (8, 70, 90) (9, 70, 90) (10, 70, 90) (11, 70, 90) (12, 70, 90) (13, 70, 90) (14, 70, 90) (15, 70, 90) (16, 70, 90)
In this trajectory, the three dogs move around the field playing together, while the three cats remain stationary, watching from different parts of the field. The coordinates are just examples and can be adjusted to fit the specific animation or video.)"},
    {"a frog is running and rat is running.",
     R"(You want to see a trajectory for a frog and a rat running together! Here it is:
Frog:
(1, 20, 100) (2, 25, 95) (3, 30, 90) (4, 35, 85) (5, 40, 80) (6, 45, 75) (7, 50, 70) (8, 55, 65) (9, 60, 60) (10, 65, 55) (11, 70, 50) (12, 75, 45) (13, 80, 40) (14, 85, 35) (15, 90, 30) (16, 95, 25)
Rat:
(1, 80, 50) (2, 75, 55) (3, 70, 60) (4, 65, 65) (5, 60, 70) (6, 55, 75) (7, 50, 80) (8, 45, 85) (9, 40, 90) (10, 35, 95) (11, 30, 100) (12, 25, 105) (13, 20, 110) (14, 15, 115) (15, 10, 120) (16, 5, 125)
In this trajectory, the frog is running from left to right, while the rat is running from right to left. Both are moving at different speeds and angles, creating a fun and dynamic scene!)"},
    {"Two men walking towards each other.",
     R"(Here's a possible trajectory for the two men walking towards each other:
Man 1:
(1, 20, 100) (2, 22, 100) (3, 24, 100) (4, 26, 100) (5, 28, 100) (6, 30, 100) (7, 32, 100) (8, 34, 100) (9, 36, 100) (10, 38, 100) (11, 40, 100) (12, 42, 100) (13, 44, 100) (14, 46, 100) (15, 48, 100) (16, 50, 100) (17, 52, 100) (18, 54, 100) (19, 56, 100) (20, 58, 100) (21, 60, 100) (22, 62, 100) (23, 64, 100) (24, 66, 100) (25, 68, 100) (26, 70, 100) (27, 72, 100) (28, 74, 100) (29, 76, 100) (30, 78, 100) (31, 80, 100) (32, 82, 100)
Man 2:
(1, 180, 100) (2, 178, 100) (3, 176, 100) (4, 174, 100) (5, 172, 100) (6, 170, 100) (7, 168, 100) (8, 166, 100) (9, 164, 100) (10, 162, 100) (11, 160, 100) (12, 158, 100) (13, 156, 100) (14, 154, 100) (15, 152, 100) (16, 150, 100) (17, 148, 100) (18, 146, 100) (19, 144, 100) (20, 142, 100) (21, 140, 100) (22, 138, 100) (23, 136, 100) (24, 134, 100) (25, 132, 100) (26, 130, 100) (27, 128, 100) (28, 126, 100) (29, 124, 100) (30, 122, 100) (31, 120, 100) (32, 118, 100)
In this trajectory, the two men are walking towards each other at a constant speed of 2 pixels/frame. Man 1 is walking from left to right, while Man 2 is walking from right to left. They will meet in the middle of the frame at around frame 16.)"},
};

}  // namespace

std::span<const FewshotExample> fewshot_pool() { return {kPool, std::size(kPool)}; }

}  // namespace movi
