#!/usr/bin/env python3
"""Regenerate the bundled mini corpus under src/claimlens/data/mini/.

The corpus is crafted so that every gold perspective of a claim lands in the
top-30 BM25 hits for that claim, and every gold evidence paragraph lands in
the top-20 hits for its (claim, perspective) query; the script asserts both
before writing. Run from the repo root: python scripts/gen_mini_corpus.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from claimlens.corpus import normalize_text
from claimlens.retrieval import build_index, search, search_evidence

TOPICS = [
    {
        "key": "socialmedia",
        "claim": "Social media platforms improve everyday communication",
        "support": [
            "Social media platforms help distant families stay in touch",
            "Messaging tools on social media platforms keep faraway relatives close",
        ],
        "oppose": [
            "Social media platforms spread misleading rumors quickly",
            "Viral posts on social media platforms amplify misinformation",
        ],
        "extra": ("support", "Small shops reach new customers through social media platforms"),
    },
    {
        "key": "uniforms",
        "claim": "School uniforms should be mandatory for students",
        "support": [
            "School uniforms reduce clothing competition among students",
            "Mandatory school uniforms ease morning pressure on students",
        ],
        "oppose": [
            "School uniforms suppress personal expression of students",
            "Forcing school uniforms limits how students express identity",
        ],
        "extra": None,
    },
    {
        "key": "remotework",
        "claim": "Remote work makes employees more productive",
        "support": [
            "Remote work saves employees long commutes and wasted hours",
            "Skipping the commute lets remote work employees focus longer",
        ],
        "oppose": [
            "Remote work isolates employees from their teams",
            "Employees in remote work arrangements drift from colleagues",
        ],
        "extra": ("oppose", "Home distractions erode productive hours during remote work"),
    },
    {
        "key": "electriccars",
        "claim": "Electric cars are better for the environment",
        "support": [
            "Electric cars emit no exhaust fumes in city traffic",
            "Streets with electric cars have cleaner air and less exhaust",
        ],
        "oppose": [
            "Battery production for electric cars strains mineral mining",
            "Mining lithium for electric cars batteries scars landscapes",
        ],
        "extra": None,
    },
    {
        "key": "nuclear",
        "claim": "Nuclear energy should power the electric grid",
        "support": [
            "Nuclear energy delivers steady grid power without carbon",
            "Carbon free nuclear energy keeps the grid stable",
        ],
        "oppose": [
            "Nuclear energy leaves radioactive waste for centuries",
            "Storing radioactive waste from nuclear energy burdens future generations",
        ],
        "extra": ("support", "Modern nuclear energy reactors shut down safely on their own"),
    },
    {
        "key": "homework",
        "claim": "Daily homework helps children learn more",
        "support": [
            "Daily homework builds steady practice habits in children",
            "Children retain lessons longer with daily homework practice",
        ],
        "oppose": [
            "Daily homework exhausts children after long school days",
            "Piles of daily homework leave children too tired to play",
        ],
        "extra": None,
    },
    {
        "key": "zoos",
        "claim": "Zoos protect endangered animal species",
        "support": [
            "Zoos run breeding programs for endangered animal species",
            "Endangered animal species recover through zoos breeding efforts",
        ],
        "oppose": [
            "Zoos confine wild animal species in small enclosures",
            "Wild animal species pace anxiously inside zoos enclosures",
        ],
        "extra": ("oppose", "Zoos entertain visitors more than they protect animal species"),
    },
    {
        "key": "videogames",
        "claim": "Video games sharpen problem solving skills",
        "support": [
            "Puzzle video games train planning and problem solving",
            "Strategy video games reward careful problem solving habits",
        ],
        "oppose": [
            "Long video games sessions crowd out homework and sleep",
            "Late night video games leave players drowsy and behind on sleep",
        ],
        "extra": None,
    },
    {
        "key": "space",
        "claim": "Governments should fund crewed space exploration",
        "support": [
            "Crewed space exploration drives new materials and inventions",
            "Inventions from crewed space exploration reach everyday products",
        ],
        "oppose": [
            "Crewed space exploration diverts funds from urgent needs",
            "Money for crewed space exploration could fix problems on earth",
        ],
        "extra": ("support", "Crewed space exploration inspires students toward science careers"),
    },
    {
        "key": "basicincome",
        "claim": "A universal basic income would reduce poverty",
        "support": [
            "Universal basic income gives poor households steady cash floors",
            "Steady universal basic income payments lift households from poverty",
        ],
        "oppose": [
            "Universal basic income costs more than governments collect",
            "Funding universal basic income requires enormous tax increases",
        ],
        "extra": None,
    },
    {
        "key": "transit",
        "claim": "Cities should invest in public transit over highways",
        "support": [
            "Public transit moves more commuters per lane than highways",
            "Buses and trains in public transit carry crowds highways cannot",
        ],
        "oppose": [
            "Public transit schedules trap commuters who work odd hours",
            "Commuters with odd shifts wait endlessly for public transit",
        ],
        "extra": ("oppose", "Sprawling cities make public transit coverage impractical"),
    },
    {
        "key": "organic",
        "claim": "Organic farming produces healthier food",
        "support": [
            "Organic farming avoids synthetic pesticide residue on food",
            "Food from organic farming carries less pesticide residue",
        ],
        "oppose": [
            "Organic farming yields less food per acre of land",
            "Feeding cities with organic farming needs far more land",
        ],
        "extra": None,
    },
]

DISTRACTOR_PERSPECTIVES = [
    "Chess openings reward years of memorization",
    "Sourdough bread needs a lively fermented starter",
    "Mountain marathons demand months of altitude adaptation",
    "Jazz trios improvise around a walking bassline",
    "Antique clocks require patient seasonal winding",
    "Coral reefs bleach when oceans warm suddenly",
    "Typewriters clatter in ways keyboards never will",
    "Lighthouse keepers once logged every passing ship",
]

DISTRACTOR_EVIDENCE = [
    "Grandmaster interviews describe thousands of memorized chess openings refreshed weekly.",
    "Bakers report sourdough starters doubling within five hours at room warmth.",
    "Race physicians track marathon runners acclimatizing for eight weeks at altitude.",
    "Concert recordings capture jazz trios trading improvised choruses over a bassline.",
    "Horologists keep antique clocks accurate by adjusting pendulums each season.",
    "Marine surveys logged coral bleaching across reefs after one warm current.",
]


def evidence_sentences(perspective: str, variant: int) -> str:
    lowered = perspective[0].lower() + perspective[1:]
    if variant == 0:
        return (f"A field survey across three regions found that {lowered}, "
                f"a pattern interviewers heard repeatedly.")
    return (f"Longitudinal panel data indicate that {lowered}, "
            f"confirmed by two independent follow-up studies.")


def build():
    claims, perspectives, evidence, gold = [], [], [], []
    for i, topic in enumerate(TOPICS, start=1):
        claim_id = f"mc{i:02d}"
        claims.append({"id": claim_id, "text": topic["claim"]})
        groups = [("sup", "support", topic["support"]), ("opp", "oppose", topic["oppose"])]
        if topic["extra"]:
            stance, text = topic["extra"]
            groups.append(("ext", stance, [text]))
        for group_key, stance, texts in groups:
            cluster_id = f"{claim_id}-{group_key}"
            for j, text in enumerate(texts, start=1):
                pid = f"mp-{topic['key']}-{group_key}{j}"
                perspectives.append({"id": pid, "text": text})
                eids = []
                n_evidence = 2 if (group_key == "sup" and j == 1) else 1
                for v in range(n_evidence):
                    eid = f"me-{topic['key']}-{group_key}{j}-{v + 1}"
                    evidence.append({"id": eid, "text": evidence_sentences(text, v)})
                    eids.append(eid)
                gold.append({
                    "claim_id": claim_id,
                    "perspective_id": pid,
                    "stance": stance,
                    "cluster_id": cluster_id,
                    "evidence_ids": eids,
                })
    for i, text in enumerate(DISTRACTOR_PERSPECTIVES, start=1):
        perspectives.append({"id": f"mp-dx{i:02d}", "text": text})
    for i, text in enumerate(DISTRACTOR_EVIDENCE, start=1):
        evidence.append({"id": f"me-dx{i:02d}", "text": text})
    return claims, perspectives, evidence, gold


def verify(claims, perspectives, evidence, gold):
    for table in (claims, perspectives, evidence):
        texts = [normalize_text(r["text"]) for r in table]
        assert len(set(texts)) == len(texts), "normalized texts must be unique"

    p_index = build_index((r["id"], r["text"]) for r in perspectives)
    e_index = build_index((r["id"], r["text"]) for r in evidence)
    by_claim: dict = {}
    for ann in gold:
        by_claim.setdefault(ann["claim_id"], []).append(ann)
    claim_text = {r["id"]: r["text"] for r in claims}
    perspective_text = {r["id"]: r["text"] for r in perspectives}

    for claim_id, anns in by_claim.items():
        stances = {a["stance"] for a in anns}
        clusters = {a["cluster_id"] for a in anns}
        assert stances == {"support", "oppose"}, claim_id
        assert len(clusters) >= 2, claim_id
        hits = {h.doc_id for h in search(p_index, claim_text[claim_id], 30)}
        for ann in anns:
            assert ann["perspective_id"] in hits, (claim_id, ann["perspective_id"])
            assert ann["evidence_ids"], ann["perspective_id"]
            ev_hits = {h.doc_id for h in search_evidence(
                e_index, claim_text[claim_id],
                perspective_text[ann["perspective_id"]], 20)}
            for eid in ann["evidence_ids"]:
                assert eid in ev_hits, (claim_id, ann["perspective_id"], eid)
    print(f"verified: {len(claims)} claims, {len(perspectives)} perspectives, "
          f"{len(evidence)} evidence, {len(gold)} gold annotations")


def write(claims, perspectives, evidence, gold):
    out = Path(__file__).resolve().parents[1] / "src" / "claimlens" / "data" / "mini"
    out.mkdir(parents=True, exist_ok=True)
    for name, rows in (("claims", claims), ("perspectives", perspectives),
                       ("evidence", evidence), ("gold", gold)):
        with (out / f"{name}.jsonl").open("w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    tables = build()
    verify(*tables)
    write(*tables)
