#!/usr/bin/env python3
"""Walkthrough: folding the append-only event log into accuracy and usage
reports.

The fixture reproduces the deployment arithmetic: 197 voted answers with
143 upvotes (top-1), 109 voted questions with 95 upvoted at least once
(top-3), and the usage-event counts with their per-question ratios.
"""

import json

from sciqa.analytics import accuracy_report, usage_report
from sciqa.synth import feedback_fixture_events, usage_fixture_events

events = feedback_fixture_events() + usage_fixture_events()
print(f"Replaying {len(events)} events from the log...\n")

accuracy = accuracy_report(events)
print("Accuracy report:")
print(f"  top-1 = {accuracy.top1 * 100:.1f}%  (n = {accuracy.n_answers} voted answers)")
print(f"  top-3 = {accuracy.top3 * 100:.1f}%  (n = {accuracy.n_questions} voted questions)\n")

usage = usage_report(events, questions_asked=1500)
print("Usage report (1500 questions asked):")
for kind, count in usage["counts"].items():
    print(f"  {kind:28s} {count:5d}")
print(json.dumps({"ratios": {k: round(v, 2) for k, v in usage["ratios"].items()}}, indent=2))
