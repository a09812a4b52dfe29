#!/usr/bin/env python3
# Copyright 2026 The QForge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the deterministic test fixtures in this directory.

corpus12.jsonl      12 synthetic news articles, 500..511 words each, with a
                    short lead sentence ("It is <word>.") so a
                    first-sentence summarizer yields one keyphrase.
table1_*.csv/jsonl  annotation fixtures whose macro means are exactly
                    3.661 / 3.810 (adversarial run) and 2.542 (vanilla).
"""

import json
import random

TOPICS = [
    ("harbor", "storm", ["harbor", "ferry", "tide", "pier", "captain", "cargo", "lighthouse", "dock"]),
    ("budget", "council", ["budget", "council", "tax", "school", "levy", "treasurer", "audit", "bond"]),
    ("wildfire", "smoke", ["wildfire", "firefighter", "smoke", "canyon", "evacuation", "ember", "ridge", "helicopter"]),
    ("election", "ballot", ["ballot", "candidate", "precinct", "turnout", "campaign", "debate", "recount", "volunteer"]),
    ("vaccine", "clinic", ["vaccine", "clinic", "nurse", "dose", "pharmacy", "outbreak", "booster", "hospital"]),
    ("transit", "rail", ["railway", "commuter", "station", "tunnel", "signal", "conductor", "timetable", "platform"]),
    ("drought", "reservoir", ["reservoir", "farmer", "irrigation", "aquifer", "crop", "rainfall", "canal", "orchard"]),
    ("museum", "gallery", ["museum", "painting", "curator", "sculpture", "exhibit", "archive", "donor", "gallery"]),
    ("stadium", "league", ["stadium", "league", "coach", "striker", "season", "referee", "trophy", "fan"]),
    ("glacier", "climate", ["glacier", "scientist", "ice", "expedition", "meltwater", "satellite", "valley", "sensor"]),
    ("factory", "union", ["factory", "union", "worker", "shift", "wage", "contract", "assembly", "foreman"]),
    ("library", "reading", ["library", "librarian", "novel", "reader", "catalog", "branch", "author", "shelf"]),
]

LEADS = ["raining", "official", "confirmed", "underway", "contested", "spreading",
         "worsening", "reopening", "tense", "accelerating", "final", "expanding"]

ADJ = ["northern", "busy", "quiet", "regional", "historic", "crowded", "remote",
       "municipal", "coastal", "rural", "modern", "aging", "popular", "temporary"]
VERB = ["inspected", "delayed", "praised", "questioned", "funded", "repaired",
        "reviewed", "expanded", "closed", "visited", "measured", "debated"]
PLACE = ["Riverton", "Maple County", "Eastbrook", "Port Ellis", "Cedar Falls",
         "Lakeside", "Hollow Creek", "Granite Bay", "Westfield", "Ashford"]
DAY = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
PEOPLE = ["Maria Lopez", "James Okafor", "Priya Natarajan", "Tom Becker",
          "Lena Fischer", "Omar Haddad", "Grace Liu", "Daniel Moreau"]

TEMPLATES = [
    "The {adj} {n1} near {place} was {verb} by officials on {day}.",
    "Residents said the {n1} and the {n2} needed more attention this year.",
    "{person} described the {adj} {n1} as a turning point for {place}.",
    "Local reporters {verb} the {n2} after the {n1} drew wide criticism.",
    "A spokesperson for {place} confirmed that the {n1} remains under review.",
    "Several {adj} groups asked whether the {n2} could be {verb} before winter.",
    "According to {person}, the {n1} budget grew faster than the {n2} budget.",
    "Critics argued that the {adj} {n2} was {verb} without a public hearing.",
    "On {day}, crews {verb} the {n1} while the {n2} stayed open to visitors.",
    "{person} said the {n2} in {place} would be {verb} again next month.",
]


def make_article(rng, idx):
    key, second, vocab = TOPICS[idx]
    while True:
        sentences = ["It is %s." % LEADS[idx]]
        words = 3
        while words < 500:
            t = rng.choice(TEMPLATES)
            n1, n2 = rng.sample(vocab, 2)
            s = t.format(adj=rng.choice(ADJ), n1=n1, n2=n2, verb=rng.choice(VERB),
                         place=rng.choice(PLACE), day=rng.choice(DAY),
                         person=rng.choice(PEOPLE))
            s = s[0].upper() + s[1:]
            sentences.append(s)
            words += len(s.split())
        if 500 <= words <= 511:
            return " ".join(sentences)


def write_corpus(rng):
    with open("corpus12.jsonl", "w") as f:
        for i, (key, second, _) in enumerate(TOPICS):
            body = make_article(rng, i)
            obj = {"id": "a%02d" % (i + 1), "title": "%s report" % key.title(),
                   "body": body,
                   "hashtags": ["#%s" % key, "#%s" % second] if i < 7 else [],
                   "evergreen": i == 11, "source": "fixture"}
            if i == 3:
                obj["clicks"] = 1834  # pass-through field, ignored by the loader
            f.write(json.dumps(obj) + "\n")


def scores_with_total(rng, questions, raters, total, center):
    rows = [[min(5, max(1, int(round(rng.gauss(center, 0.9))))) for _ in range(raters)]
            for _ in range(questions)]
    cur = sum(map(sum, rows))
    while cur != total:
        q = rng.randrange(questions)
        r = rng.randrange(raters)
        if cur < total and rows[q][r] < 5:
            rows[q][r] += 1
            cur += 1
        elif cur > total and rows[q][r] > 1:
            rows[q][r] -= 1
            cur -= 1
    return rows


def write_table1(rng):
    # 500 generated pairs: 110 rejected by the QA filter, 390 kept.
    pairs = []
    for i in range(500):
        art = "t%03d" % (i // 10)
        rank, sent = i % 10, 0
        verdict = "Unanswerable" if i % 50 < 11 else "Kept"
        ctx = "The harbor ferry %d left on time." % i
        kept = verdict == "Kept"
        pairs.append({"article_id": art, "keyphrase": "harbor ferry", "keyphrase_rank": rank,
                      "sentence_index": sent, "context": ctx,
                      "question": "What does the article say about harbor ferry %d?" % i,
                      "answer": ctx if kept else "", "answer_start": 0 if kept else None,
                      "answer_end": len(ctx) if kept else None,
                      "qa_score": 0.9 if kept else 0.0, "toxicity": 0.0 if kept else None,
                      "verdict": verdict, "baseline": False, "related_ids": []})
    with open("table1_pairs.jsonl", "w") as f:
        for p in pairs:
            f.write(json.dumps(p) + "\n")
    kept_ids = ["%s#%d.%d" % (p["article_id"], p["keyphrase_rank"], p["sentence_index"])
                for p in pairs if p["verdict"] == "Kept"][:250]
    quality = scores_with_total(rng, 250, 4, 3661, 3.66)
    coherence = scores_with_total(rng, 250, 4, 3810, 3.81)
    with open("table1_annotations.csv", "w") as f:
        f.write("pair_id,rater_id,dimension,score\n")
        for dim, rows in (("quality", quality), ("coherence", coherence)):
            for pid, row in zip(kept_ids, rows):
                for r, s in enumerate(row):
                    f.write("%s,r%d,%s,%d\n" % (pid, r + 1, dim, s))
    vanilla = scores_with_total(rng, 250, 4, 2542, 2.54)
    with open("table1_vanilla.csv", "w") as f:
        f.write("pair_id,rater_id,dimension,score\n")
        for q, row in enumerate(vanilla):
            for r, s in enumerate(row):
                f.write("vanilla#%d,r%d,quality,%d\n" % (q, r + 1, s))


if __name__ == "__main__":
    rng = random.Random(20231016)
    write_corpus(rng)
    write_table1(rng)
