"""Published benchmark rows: sub-scores, delay pairs (window, all) and gas."""

PUBLISHED = {
    "TWAP": {"st": 0.109, "delay": (627.8, 1049), "gas": 199_474, "de": 0.917, "gs": 1.794, "res": 1.106},
    "EMA": {"st": 0.013, "delay": (404.7, 830), "gas": 213_981, "de": 1.246, "gs": 1.673, "res": 1.170},
    "True Median": {"st": 1.000, "delay": (555.0, 983), "gas": 357_909, "de": 1.000, "gs": 1.000, "res": 1.000},
    "MED": {"st": 0.454, "delay": (555.2, 1162), "gas": 169_062, "de": 0.896, "gs": 2.117, "res": 1.296},
    "MedDS": {"st": 0.006, "delay": (325.7, 532), "gas": 284_317, "de": 1.793, "gs": 1.259, "res": 1.222},
}
