#!/usr/bin/env python3
"""Regenerate crates/core/tests/fixtures/scorer_reference.tsv.

Runs the reference rule engine (vaderSentiment 3.3.2) over a fixed sentence
suite and records unrounded compound/pos/neg/neu values. Emoji-to-text
translation is switched off because lexprop scores emoji as plain tokens.

usage: make_scorer_fixtures.py PATH_TO_VADERSENTIMENT_PACKAGE_PARENT
"""
import math
import sys

sys.path.insert(0, sys.argv[1] if len(sys.argv) > 1 else ".")
from vaderSentiment.vaderSentiment import SentimentIntensityAnalyzer  # noqa: E402


class Unrounded(SentimentIntensityAnalyzer):
    def score_valence(self, sentiments, text):
        if not sentiments:
            return {"neg": 0.0, "neu": 0.0, "pos": 0.0, "compound": 0.0}
        sum_s = float(sum(sentiments))
        amp = self._punctuation_emphasis(text)
        if sum_s > 0:
            sum_s += amp
        elif sum_s < 0:
            sum_s -= amp
        compound = sum_s / math.sqrt(sum_s * sum_s + 15)
        compound = max(-1.0, min(1.0, compound))
        pos_sum, neg_sum, neu_count = self._sift_sentiment_scores(sentiments)
        if pos_sum > math.fabs(neg_sum):
            pos_sum += amp
        elif pos_sum < math.fabs(neg_sum):
            neg_sum -= amp
        total = pos_sum + math.fabs(neg_sum) + neu_count
        return {
            "neg": math.fabs(neg_sum / total),
            "neu": math.fabs(neu_count / total),
            "pos": math.fabs(pos_sum / total),
            "compound": compound,
        }


SENTENCES = [
    "Need AC - way too hot. Take care out there!!",
    "This storm is super scary. Please pray for us 🙏",
    "Drinking coffee watching the snow - It can't get better than this!",
    "I bloody hate the weather today, excited for the best weather tomorrow",
    "VADER is smart, handsome, and funny.",
    "VADER is smart, handsome, and funny!",
    "VADER is very smart, handsome, and funny.",
    "VADER is VERY SMART, handsome, and FUNNY.",
    "VADER is VERY SMART, handsome, and FUNNY!!!",
    "VADER is VERY SMART, uber handsome, and FRIGGIN FUNNY!!!",
    "VADER is not smart, handsome, nor funny.",
    "The book was good.",
    "At least it isn't a horrible book.",
    "The book was only kind of good.",
    "The plot was good, but the characters are uncompelling and the dialog is not great.",
    "Today SUX!",
    "Today only kinda sux! But I'll get by, lol",
    "Make sure you :) or :D today!",
    "Not bad at all",
    "Sentiment analysis has never been good.",
    "Sentiment analysis has never been this good!",
    "Most automated sentiment analysis tools are shit.",
    "With VADER, sentiment analysis is the shit!",
    "Other sentiment analysis tools can be quite bad.",
    "On the other hand, VADER is quite bad ass",
    "VADER is such a badass!",
    "Without a doubt, excellent idea.",
    "Roger Dodger is one of the most compelling variations on this theme.",
    "Roger Dodger is at least compelling as a variation on the theme.",
    "Roger Dodger is one of the least compelling variations on this theme.",
    "Not such a badass after all.",
    "Without a doubt, an excellent idea.",
    "Help me, there is a very strong storm!",
    "My house has been wrecked by an active volcano #alert",
    "that is very BAD!",
    "that is bad",
    "",
    "the weather",
    "     ",
    "!!!",
    "???",
    "good???",
    "good????",
    "good?",
    "bad!!!!!!",
    "no good",
    "no way this is good",
    "there is no problem",
    "no",
    "NO good at all",
    "I am not happy",
    "I am not very happy",
    "I am never so happy",
    "I don't love it",
    "I didn't really like the rain",
    "It is least bad",
    "It was at least fun",
    "very least helpful",
    "The sun is lovely but the wind is awful",
    "but it was nice",
    "it was nice but",
    "Love it but hate it but love it",
    "great great great",
    "sort of happy",
    "kind of sad",
    "just enough warmth to be nice",
    "the bomb really was the bomb",
    "kiss of death for the garden",
    "yeah right, that went well",
    "this cake is to die for",
    "waiting at the bus stop",
    "HAPPY HAPPY HAPPY",
    "Happy happy HAPPY day",
    "EXTREMELY good news for the farmers",
    "extremely GOOD news",
    "The heatwave is absolutely unbearable and totally exhausting",
    "Slightly annoyed by the drizzle",
    "barely warm, hardly pleasant",
    "It's freezing cold and I love it",
    "Thunder and lightning all night, couldn't sleep",
    "Wonderful sunny morning :-) enjoy!",
    "Flooded roads again :( stay safe everyone",
    "what a disaster... trees down everywhere",
    "Stay safe, stay warm, look after each other ❤️",
    "😊 sunny day, the best",
    "The wind is fierce; the kids are thrilled",
    "I can't stand this humidity",
    "Never been so glad to see rain",
    "This weather is neither good nor bad",
    "Nothing good ever comes from a hailstorm",
    "Terrible, horrible, no good, very bad day",
    "Not the worst summer, not the best either",
    "I'm so so so excited for snow!!!",
    "ugh. hot. sticky. miserable.",
    "LOL the snowman fell over",
    "Couldn't be happier with this breeze",
    "The forecast isn't great but we will cope",
    "Heat stroke warnings issued; please check on elderly neighbours",
    "What a gorgeous, glorious, beautiful afternoon",
    "Worst. Storm. Ever.",
]


def main():
    assert len(SENTENCES) == 100, len(SENTENCES)
    assert len(set(SENTENCES)) == 100
    analyzer = Unrounded()
    analyzer.emojis = {}
    out = sys.stdout
    out.write("text\tcompound\tpos\tneg\tneu\n")
    for s in SENTENCES:
        r = analyzer.polarity_scores(s)
        out.write("%s\t%r\t%r\t%r\t%r\n" % (s, r["compound"], r["pos"], r["neg"], r["neu"]))


if __name__ == "__main__":
    main()
