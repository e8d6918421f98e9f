#!/usr/bin/env python3
"""Regenerates the toy fixture set. Deterministic: python3 fixtures/generate.py"""

import csv
import math
import os
import random
import struct
import wave

HERE = os.path.dirname(os.path.abspath(__file__))
rng = random.Random(20260816)

TASTES = ["sweet", "bitter", "sour", "salty", "spicy"]


def write_csv(name, header, rows):
    with open(os.path.join(HERE, name), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def l1(vec):
    s = sum(vec)
    return [v / s for v in vec] if s > 0 else vec


def l1_rounded(vec, digits=6):
    """Round to `digits` decimals while keeping the sum at exactly 1.0."""
    out = [round(v, digits) for v in l1(vec)]
    out[-1] = round(1.0 - sum(out[:-1]), digits)
    return out


# ---------------------------------------------------------------- chemistry
# Three food groups with distinct compound taste signatures; nutrients are
# deliberately generic so the compound term carries the group separation.
FOODS = [
    ("apple", "fruit"), ("lemon", "fruit"), ("grapefruit", "fruit"), ("mango", "fruit"),
    ("beef", "meat"), ("anchovy", "meat"), ("pork", "meat"), ("chicken", "meat"),
    ("chili", "spice"), ("black_pepper", "spice"), ("ginger", "spice"), ("cinnamon", "spice"),
    ("water", "other"),  # no chemistry rows: zero-flagged on purpose
]

# group -> mean taste probability profile (sweet,bitter,sour,salty,spicy,umami)
GROUP_PROFILE = {
    "fruit": [0.55, 0.10, 0.30, 0.02, 0.01, 0.02],
    "meat": [0.05, 0.05, 0.05, 0.40, 0.05, 0.40],
    "spice": [0.10, 0.25, 0.05, 0.02, 0.55, 0.03],
}

compounds = []
for food_id, group in FOODS:
    if group == "other":
        continue
    for c in range(3):
        profile = []
        for p in GROUP_PROFILE[group]:
            profile.append(max(0.0, min(1.0, p + rng.uniform(-0.05, 0.05))))
        total = sum(profile)
        profile = [p / total for p in profile]
        conc = round(rng.uniform(5.0, 400.0), 3)
        compounds.append([food_id, f"{food_id}_c{c}", conc] + [round(p, 6) for p in profile])

write_csv("foods.csv", ["food_id", "food_group"], [[f, g] for f, g in FOODS])
write_csv(
    "compounds.csv",
    ["food_id", "compound_id", "concentration_mg_per_100g"] + [f"p_{t}" for t in TASTES + ["umami"]],
    compounds,
)

NUTRIENT_MAP = [
    ("fructose", "sweet"), ("glucose", "sweet"), ("citric_acid", "sour"),
    ("sodium", "salty"), ("glutamate", "umami"), ("caffeine", "bitter"),
    ("capsaicin", "spicy"),
]
write_csv("nutrient_taste_map.csv", ["nutrient_id", "taste"], NUTRIENT_MAP)

nutrients = []
for food_id, group in FOODS:
    if group == "other":
        continue
    for nutrient_id, _taste in NUTRIENT_MAP:
        # near-uniform, small amounts: nutrients alone barely separate the
        # groups, and the compound term carries most of the signal
        nutrients.append([food_id, nutrient_id, round(rng.uniform(1.0, 6.0), 3)])
    nutrients.append([food_id, "fiber", round(rng.uniform(0.0, 10.0), 3)])  # unmapped
write_csv("nutrients.csv", ["food_id", "nutrient_id", "amount"], nutrients)

write_csv(
    "dishes.csv",
    ["dish_id", "food_ids"],
    [
        ["fruit_salad", "apple|mango|lemon"],
        ["beef_stew", "beef|pork|black_pepper"],
        ["spicy_noodles", "chili|ginger|chicken|anchovy"],
        ["citrus_fish", "anchovy|lemon|grapefruit"],
    ],
)

# ------------------------------------------------------------------ corpora
# Tracks carry L1-normalized flavor annotations; features are a noisy linear
# image of the flavors plus pure-noise columns, so cross-corpus statistics
# have real signal to find.
FEATURES = ["tempo", "brightness", "attack", "roughness", "warmth", "noise_a", "noise_b", "drive"]
GENRES = {
    "jazz": [0.30, 0.25, 0.15, 0.15, 0.15],
    "metal": [0.05, 0.30, 0.10, 0.20, 0.35],
    "pop": [0.45, 0.05, 0.20, 0.20, 0.10],
}
MOODS = ["calm", "bright", "dark", "warm"]
TOPICS = [
    "smooth velvet night saxophone mellow blue city lights slow",
    "heavy distorted riff thunder scream relentless iron storm",
    "sunny catchy hook dance radio summer sparkling chorus",
]
# flavor -> feature loading (8 columns)
LOADING = [
    [0.9, 0.1, 0.0, 0.0, 0.4, 0.0, 0.0, 0.0],   # sweet
    [0.0, -0.6, 0.2, 0.7, 0.0, 0.0, 0.0, 0.3],  # bitter
    [0.1, 0.5, 0.6, 0.0, -0.3, 0.0, 0.0, 0.0],  # sour
    [0.0, 0.0, 0.3, 0.2, 0.5, 0.0, 0.0, -0.4],  # salty
    [0.3, 0.4, 0.0, 0.5, 0.0, 0.0, 0.0, 0.8],   # spicy
]


def make_corpus(name, n, noise):
    genre_names = sorted(GENRES)
    rows = []
    for i in range(n):
        genre = genre_names[i % len(genre_names)]
        base = GENRES[genre]
        flavor = l1_rounded([max(1e-3, b + rng.gauss(0.0, 0.06)) for b in base])
        feats = []
        for j in range(len(FEATURES)):
            v = sum(flavor[t] * LOADING[t][j] for t in range(5))
            feats.append(round(v + rng.gauss(0.0, noise), 6))
        moods = sorted(rng.sample(MOODS, rng.choice([1, 1, 2])))
        words = TOPICS[genre_names.index(genre)].split()
        text = " ".join(rng.sample(words, 5)) if rng.random() > 0.15 else ""
        rows.append([f"{name}{i:03d}", genre, "|".join(moods), text] + flavor + feats)
    header = (
        ["id", "genre", "moods", "text"]
        + [f"flavor:{t}" for t in TASTES]
        + [f"feat:{f}" for f in FEATURES]
    )
    write_csv(f"corpus_{name}.csv", header, rows)
    return rows


corpus_a = make_corpus("a", 30, 0.05)
make_corpus("b", 60, 0.08)

# --------------------------------------------------------------- perceptual
# Ten targets point at distinct corpus-a tracks; subject ratings are a noisy
# Likert image of each track's flavor annotation.
target_rows = []
picked = [corpus_a[i] for i in range(0, 30, 3)]
for k, row in enumerate(picked):
    flavor = [float(x) for x in row[4:9]]
    target = l1_rounded([max(1e-3, f + rng.gauss(0.0, 0.03)) for f in flavor])
    target_rows.append([f"t{k:02d}", row[0]] + target)
write_csv("targets.csv", ["target_id", "track_id"] + TASTES, target_rows)

rating_rows = []
for s in range(14):
    subject = f"s{s:02d}"
    device = rng.choice(["headphones", "speakers"])
    hearing = 1 if s == 12 else 0
    taste_flag = 1 if s == 13 else 0
    for row in picked:
        flavor = [float(x) for x in row[4:9]]
        ratings = []
        for t in range(5):
            v = 1 + round(6 * min(1.0, flavor[t] / 0.5) + rng.gauss(0.0, 0.7))
            ratings.append(max(1, min(7, v)))
        rating_rows.append([subject, row[0]] + ratings + [device, hearing, taste_flag])
write_csv(
    "ratings.csv",
    ["subject_id", "track_id"] + TASTES + ["device", "hearing_impaired", "taste_impaired"],
    rating_rows,
)

# -------------------------------------------------------------------- audio
def write_wav(name, samples, sr=22050):
    with wave.open(os.path.join(HERE, name), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(sr)
        frames = b"".join(
            struct.pack("<h", max(-32768, min(32767, int(round(s * 32767.0)))))
            for s in samples
        )
        w.writeframes(frames)


SR = 22050
N = int(0.6 * SR)
write_wav("tone_440.wav", [0.5 * math.sin(2 * math.pi * 440 * i / SR) for i in range(N)])
write_wav(
    "chirp.wav",
    [0.4 * math.sin(2 * math.pi * (200 + 1800 * i / N) * i / SR) for i in range(N)],
)
write_wav("noise.wav", [rng.uniform(-0.3, 0.3) for _ in range(N)])

print("fixtures written to", HERE)
