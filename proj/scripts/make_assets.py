#!/usr/bin/env python3
"""Regenerates everything under assets/.

Deterministic by construction: glyphs are thresholded (no anti-aliasing),
sprites and templates are drawn procedurally, tables are spelled out here,
and the noise asset uses a fixed-seed generator. Run from the repo root:

    python3 scripts/make_assets.py
"""

import json
import math
import os
import struct
import unicodedata
import wave

from PIL import Image, ImageDraw, ImageFont

ROOT = os.path.normpath(os.path.join(os.path.dirname(__file__), ".."))
ASSETS = os.path.join(ROOT, "assets")

FONT_PATH = "/usr/share/fonts/truetype/dejavu/DejaVuSansMono-Bold.ttf"
FONT_SIZE = 22
ALPHA_THRESHOLD = 128


def out_path(*parts):
    path = os.path.join(ASSETS, *parts)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# Bitmap font atlas: printable ASCII, white glyphs, hard 1-bit alpha.

def make_font():
    font = ImageFont.truetype(FONT_PATH, FONT_SIZE)
    ascent, descent = font.getmetrics()
    line_height = ascent + descent
    advance = int(round(font.getlength("M")))

    chars = [chr(c) for c in range(32, 127)]
    cols = 16
    rows = (len(chars) + cols - 1) // cols
    cell_w, cell_h = advance, line_height
    atlas = Image.new("RGBA", (cols * cell_w, rows * cell_h), (0, 0, 0, 0))
    draw = ImageDraw.Draw(atlas)

    glyphs = {}
    for i, ch in enumerate(chars):
        cx = (i % cols) * cell_w
        cy = (i // cols) * cell_h
        mask = Image.new("L", (cell_w, cell_h), 0)
        mdraw = ImageDraw.Draw(mask)
        mdraw.text((0, 0), ch, fill=255, font=font)
        hard = mask.point(lambda v: 255 if v >= ALPHA_THRESHOLD else 0)
        white = Image.new("RGBA", (cell_w, cell_h), (255, 255, 255, 0))
        white.putalpha(hard)
        atlas.paste(white, (cx, cy))
        glyphs[ch] = {"x": cx, "y": cy, "w": cell_w, "h": cell_h,
                      "advance": advance}

    atlas.save(out_path("font", "font.png"))
    meta = {
        "line_height": line_height,
        "ascent": ascent,
        "advance": advance,
        "glyphs": glyphs,
    }
    with open(out_path("font", "font.json"), "w") as f:
        json.dump(meta, f, indent=1, sort_keys=True)
    print("font: %d glyphs, cell %dx%d" % (len(glyphs), cell_w, cell_h))


# ---------------------------------------------------------------------------
# Emoji sprites: simple procedural 128x128 RGBA drawings.

def _sprite(draw_fn):
    img = Image.new("RGBA", (128, 128), (0, 0, 0, 0))
    draw_fn(ImageDraw.Draw(img))
    return img


def make_emoji():
    yellow = (255, 204, 0, 255)
    dark = (60, 40, 10, 255)

    def smiley(d):
        d.ellipse([8, 8, 120, 120], fill=yellow, outline=dark, width=4)
        d.ellipse([38, 42, 54, 62], fill=dark)
        d.ellipse([74, 42, 90, 62], fill=dark)
        d.arc([36, 52, 92, 100], 20, 160, fill=dark, width=6)

    def sad(d):
        d.ellipse([8, 8, 120, 120], fill=yellow, outline=dark, width=4)
        d.ellipse([38, 42, 54, 62], fill=dark)
        d.ellipse([74, 42, 90, 62], fill=dark)
        d.arc([40, 78, 88, 112], 200, 340, fill=dark, width=6)

    def heart(d):
        red = (220, 30, 60, 255)
        d.polygon([(64, 116), (12, 60), (12, 40), (30, 22), (50, 22), (64, 40),
                   (78, 22), (98, 22), (116, 40), (116, 60)], fill=red)
        d.ellipse([12, 14, 62, 64], fill=red)
        d.ellipse([66, 14, 116, 64], fill=red)

    def star(d):
        gold = (255, 190, 0, 255)
        pts = []
        for i in range(10):
            ang = -math.pi / 2 + i * math.pi / 5
            r = 58 if i % 2 == 0 else 24
            pts.append((64 + r * math.cos(ang), 64 + r * math.sin(ang)))
        d.polygon(pts, fill=gold, outline=dark)

    def thumbs_up(d):
        skin = (240, 190, 140, 255)
        d.rectangle([16, 64, 44, 116], fill=skin, outline=dark, width=3)
        d.rounded_rectangle([44, 56, 112, 116], 12, fill=skin, outline=dark,
                            width=3)
        d.rounded_rectangle([52, 16, 76, 64], 10, fill=skin, outline=dark,
                            width=3)

    def fire(d):
        d.polygon([(64, 6), (96, 52), (108, 92), (88, 118), (40, 118),
                   (20, 92), (34, 50)], fill=(255, 120, 20, 255))
        d.polygon([(64, 44), (84, 76), (78, 106), (50, 106), (42, 80)],
                  fill=(255, 210, 60, 255))

    def check(d):
        d.ellipse([8, 8, 120, 120], fill=(40, 160, 70, 255))
        d.line([(34, 66), (56, 90), (96, 42)], fill=(255, 255, 255, 255),
               width=12)

    def cross(d):
        d.ellipse([8, 8, 120, 120], fill=(200, 40, 40, 255))
        d.line([(40, 40), (88, 88)], fill=(255, 255, 255, 255), width=12)
        d.line([(88, 40), (40, 88)], fill=(255, 255, 255, 255), width=12)

    sprites = {"smiley": smiley, "sad": sad, "heart": heart, "star": star,
               "thumbs_up": thumbs_up, "fire": fire, "check": check,
               "cross": cross}
    for name, fn in sprites.items():
        _sprite(fn).save(out_path("emoji", name + ".png"))
    print("emoji:", ", ".join(sorted(sprites)))


# ---------------------------------------------------------------------------
# Screenshot templates: neutral, procedurally drawn UI chrome with a
# documented content rectangle.

def make_templates():
    manifest = {}

    def feed():
        w, h = 480, 960
        img = Image.new("RGB", (w, h), (242, 243, 245))
        d = ImageDraw.Draw(img)
        d.rectangle([0, 0, w, 72], fill=(255, 255, 255))
        d.rectangle([0, 71, w, 72], fill=(210, 212, 216))
        d.ellipse([16, 16, 56, 56], fill=(120, 150, 190))
        d.rectangle([72, 24, 240, 36], fill=(120, 124, 130))
        d.rectangle([72, 44, 180, 52], fill=(180, 184, 190))
        content = (12, 84, w - 24, 600)
        x, y, cw, chh = content
        d.rectangle([x - 2, y - 2, x + cw + 2, y + chh + 2],
                    fill=(255, 255, 255))
        for i, bx in enumerate(range(24, w - 60, 110)):
            d.rounded_rectangle([bx, 712, bx + 90, 744], 8,
                                fill=(225, 227, 231))
        for row in range(3):
            ry = 780 + row * 56
            d.ellipse([16, ry, 48, ry + 32], fill=(170, 180, 196))
            d.rectangle([60, ry + 6, 300 + row * 40, ry + 14],
                        fill=(150, 154, 160))
            d.rectangle([60, ry + 20, 420, ry + 26], fill=(205, 208, 214))
        img.save(out_path("templates", "mobile_feed.png"))
        return {"file": "mobile_feed.png", "content_rect": list(content)}

    def chat():
        w, h = 540, 720
        img = Image.new("RGB", (w, h), (250, 250, 252))
        d = ImageDraw.Draw(img)
        d.rectangle([0, 0, w, 64], fill=(70, 90, 130))
        d.ellipse([12, 12, 52, 52], fill=(220, 225, 235))
        d.rectangle([64, 20, 220, 32], fill=(235, 238, 244))
        d.rectangle([64, 40, 160, 48], fill=(180, 190, 210))
        for i in range(3):
            by = 80 + i * 52
            d.rounded_rectangle([16, by, 260, by + 36], 12,
                                fill=(230, 232, 238))
        content = (40, 250, 460, 360)
        x, y, cw, chh = content
        d.rounded_rectangle([x - 8, y - 8, x + cw + 8, y + chh + 8], 10,
                            fill=(224, 240, 225))
        d.rounded_rectangle([16, 650, w - 16, 700], 14, fill=(238, 238, 242))
        d.ellipse([w - 60, 656, w - 22, 694], fill=(70, 90, 130))
        img.save(out_path("templates", "web_chat.png"))
        return {"file": "web_chat.png", "content_rect": list(content)}

    manifest["mobile_feed"] = feed()
    manifest["web_chat"] = chat()
    with open(out_path("templates", "templates.json"), "w") as f:
        json.dump(manifest, f, indent=1, sort_keys=True)
    print("templates:", ", ".join(sorted(manifest)))


# ---------------------------------------------------------------------------
# Stock images and masks used as overlay/composite defaults.

def make_stock_images():
    w, h = 800, 600
    img = Image.new("RGB", (w, h))
    d = ImageDraw.Draw(img)
    for y in range(h):
        t = y / (h - 1)
        d.line([(0, y), (w, y)],
               fill=(int(40 + 120 * t), int(90 + 100 * t), int(170 - 60 * t)))
    d.ellipse([560, 60, 680, 180], fill=(250, 240, 200))
    d.polygon([(0, 600), (220, 330), (420, 600)], fill=(60, 100, 70))
    d.polygon([(300, 600), (540, 280), (800, 600)], fill=(45, 80, 60))
    img.save(out_path("images", "background_landscape.png"))

    logo = Image.new("RGBA", (128, 128), (0, 0, 0, 0))
    d = ImageDraw.Draw(logo)
    d.rounded_rectangle([4, 4, 124, 124], 24, fill=(30, 60, 150, 230))
    d.ellipse([34, 34, 94, 94], fill=(255, 255, 255, 255))
    d.ellipse([52, 52, 76, 76], fill=(30, 60, 150, 255))
    logo.save(out_path("images", "overlay_logo.png"))

    mask = Image.new("RGB", (512, 512), (0, 0, 0))
    d = ImageDraw.Draw(mask)
    d.ellipse([96, 96, 416, 416], fill=(255, 255, 255))
    mask.save(out_path("masks", "circle.png"))

    grad = Image.new("RGB", (512, 512))
    d = ImageDraw.Draw(grad)
    for x in range(512):
        v = int(255 * x / 511)
        d.line([(x, 0), (x, 512)], fill=(v, v, v))
    grad.save(out_path("masks", "horizontal_gradient.png"))
    print("images: background_landscape, overlay_logo; masks: circle, gradient")


# ---------------------------------------------------------------------------
# Background noise clip: fixed-seed pink-ish noise, 5 s mono 44.1 kHz.

def make_audio():
    rate = 44100
    seconds = 5
    state = 0x9E3779B97F4A7C15

    def next_uniform():
        nonlocal state
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        return ((state >> 11) / float(1 << 53)) * 2.0 - 1.0

    # Paul Kellet style pink filter over white noise.
    b0 = b1 = b2 = 0.0
    samples = []
    for _ in range(rate * seconds):
        white = next_uniform()
        b0 = 0.99765 * b0 + white * 0.0990460
        b1 = 0.96300 * b1 + white * 0.2965164
        b2 = 0.57000 * b2 + white * 1.0526913
        pink = (b0 + b1 + b2 + white * 0.1848) * 0.18
        samples.append(max(-1.0, min(1.0, pink)))

    with wave.open(out_path("audio", "background_noise.wav"), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(rate)
        wf.writeframes(b"".join(
            struct.pack("<h", int(round(s * 32767))) for s in samples))
    print("audio: background_noise.wav (%ds mono %dHz)" % (seconds, rate))


# ---------------------------------------------------------------------------
# Background video clip: a 2 s moving-gradient scene with a quiet sine
# track, in the library's clip-directory layout.

def make_video_background():
    width, height, frames, fps = 160, 120, 16, 8.0
    rate = 8000

    for i in range(frames):
        img = Image.new("RGB", (width, height))
        px = img.load()
        for y in range(height):
            for x in range(width):
                px[x, y] = ((x * 2 + i * 9) % 256,
                            (y * 2 + i * 5) % 256,
                            (x + y + i * 13) % 256)
        d = ImageDraw.Draw(img)
        cx = (i * width) // frames
        d.ellipse([cx - 12, 48, cx + 12, 72], fill=(250, 250, 250))
        img.save(out_path("video", "background", "frames", "%06d.png" % i))

    n = int(round(frames / fps * rate))
    with open(out_path("video", "background", "audio.f32le"), "wb") as f:
        for j in range(n):
            f.write(struct.pack("<f", 0.2 * math.sin(2 * math.pi * 110 * j / rate)))

    manifest = {
        "fps": fps,
        "frame_count": frames,
        "width": width,
        "height": height,
        "channels": 3,
        "audio": {"sample_rate": rate, "channels": 1, "frames": n},
    }
    with open(out_path("video", "background", "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    print("video: background clip (%d frames %dx%d @ %g fps)" %
          (frames, width, height, fps))


# ---------------------------------------------------------------------------
# Text tables.

def write_tsv(name, rows, header):
    with open(out_path("text", name), "w", encoding="utf-8") as f:
        f.write("# " + header + "\n")
        for row in rows:
            f.write("\t".join(row) + "\n")


def commas(rows):
    # The comma is the alternative separator, so no mapped value may be one.
    for _, v in rows:
        assert "," not in v, v
    return [(k, ",".join(v.split())) for k, v in rows]


def make_text_tables():
    homoglyphs = [
        ("a", "а ɑ"), ("b", "Ь"), ("c", "с ϲ"), ("d", "ԁ"), ("e", "е"),
        ("g", "ɡ"), ("h", "һ"), ("i", "і ı"), ("j", "ј"), ("l", "ӏ"),
        ("o", "о ο"), ("p", "р"), ("q", "ԛ"), ("s", "ѕ"), ("u", "υ"),
        ("v", "ѵ"), ("w", "ѡ"), ("x", "х"), ("y", "у"), ("z", "ᴢ"),
        ("A", "А Α"), ("B", "В Β"), ("C", "С"), ("E", "Е Ε"), ("H", "Н Η"),
        ("I", "І Ι"), ("J", "Ј"), ("K", "К Κ"), ("M", "М Μ"), ("N", "Ν"),
        ("O", "О Ο"), ("P", "Р Ρ"), ("S", "Ѕ"), ("T", "Т Τ"), ("X", "Х Χ"),
        ("Y", "У Υ"), ("Z", "Ζ"), ("0", "О"), ("3", "З"), ("6", "б"),
    ]
    write_tsv("homoglyphs.tsv", commas(homoglyphs),
              "ascii char -> comma-separated confusable codepoints")

    leet = [
        ("a", "@ 4"), ("b", "8"), ("e", "3"), ("g", "9 6"), ("i", "! 1"),
        ("l", "1 |"), ("o", "0"), ("s", "$ 5"), ("t", "7 +"), ("z", "2"),
        ("A", "4 @"), ("B", "8"), ("E", "3"), ("G", "6"), ("I", "1 !"),
        ("L", "1"), ("O", "0"), ("S", "5 $"), ("T", "7"), ("Z", "2"),
    ]
    write_tsv("similar_chars.tsv", commas(leet),
              "ascii char -> comma-separated visually similar ascii")

    accents = [
        ("a", "à á â ä ā"), ("c", "ç ć"), ("e", "è é ê ë ē"), ("i", "ì í î ï"),
        ("n", "ñ ń"), ("o", "ò ó ô ö ō"), ("u", "ù ú û ü"), ("y", "ý ÿ"),
        ("s", "ś š"), ("z", "ź ž ż"), ("g", "ğ"), ("r", "ř"), ("t", "ť"),
        ("A", "À Á Â Ä"), ("C", "Ç"), ("E", "È É Ê Ë"), ("I", "Ì Í Î Ï"),
        ("N", "Ñ"), ("O", "Ò Ó Ô Ö"), ("U", "Ù Ú Û Ü"), ("Y", "Ý"),
        ("S", "Ś Š"), ("Z", "Ź Ž"),
    ]
    write_tsv("similar_unicode.tsv", commas(accents),
              "ascii char -> comma-separated accented unicode variants")

    flip_pairs = [
        ("a", "ɐ"), ("b", "q"), ("c", "ɔ"), ("d", "p"), ("e", "ǝ"),
        ("f", "ɟ"), ("g", "ƃ"), ("h", "ɥ"), ("i", "ᴉ"), ("j", "ɾ"),
        ("k", "ʞ"), ("l", "ʃ"), ("m", "ɯ"), ("n", "u"), ("r", "ɹ"),
        ("t", "ʇ"), ("v", "ʌ"), ("w", "ʍ"), ("y", "ʎ"),
        (".", "˙"), ("?", "¿"), ("!", "¡"), ("_", "‾"),
        ("(", ")"), ("[", "]"), ("{", "}"), ("<", ">"), ("&", "⅋"),
        ("1", "Ɩ"), ("3", "Ɛ"), ("6", "9"), ("7", "ㄥ"),
    ]
    # The op needs an involution; emit both directions and let load-time
    # checks enforce symmetry.
    seen = {}
    for a, b in flip_pairs:
        seen[a] = b
        seen[b] = a
    write_tsv("upside_down.tsv", sorted(seen.items()),
              "char -> its upside-down counterpart (symmetric)")

    qwerty = [
        ("q", "wa"), ("w", "qase"), ("e", "wsdr"), ("r", "edft"),
        ("t", "rfgy"), ("y", "tghu"), ("u", "yhji"), ("i", "ujko"),
        ("o", "iklp"), ("p", "ol"), ("a", "qwsz"), ("s", "awedxz"),
        ("d", "serfcx"), ("f", "drtgvc"), ("g", "ftyhbv"), ("h", "gyujnb"),
        ("j", "huikmn"), ("k", "jiolm"), ("l", "kop"), ("z", "asx"),
        ("x", "zsdc"), ("c", "xdfv"), ("v", "cfgb"), ("b", "vghn"),
        ("n", "bhjm"), ("m", "njk"), ("1", "2q"), ("2", "13w"), ("3", "24e"),
        ("4", "35r"), ("5", "46t"), ("6", "57y"), ("7", "68u"), ("8", "79i"),
        ("9", "80o"), ("0", "9p"),
    ]
    write_tsv("qwerty_adjacent.tsv", [(k, ",".join(v)) for k, v in qwerty],
              "key -> comma-separated adjacent keys on a qwerty layout")

    gendered = [
        ("he", "she"), ("him", "her"), ("his", "her"), ("himself", "herself"),
        ("she", "he"), ("her", "him"), ("hers", "his"), ("herself", "himself"),
        ("man", "woman"), ("woman", "man"), ("men", "women"),
        ("women", "men"), ("boy", "girl"), ("girl", "boy"),
        ("boys", "girls"), ("girls", "boys"), ("father", "mother"),
        ("mother", "father"), ("dad", "mom"), ("mom", "dad"),
        ("son", "daughter"), ("daughter", "son"), ("uncle", "aunt"),
        ("aunt", "uncle"), ("husband", "wife"), ("wife", "husband"),
        ("king", "queen"), ("queen", "king"), ("brother", "sister"),
        ("sister", "brother"), ("sir", "madam"), ("madam", "sir"),
        ("mr", "mrs"), ("mrs", "mr"), ("gentleman", "lady"),
        ("lady", "gentleman"), ("grandfather", "grandmother"),
        ("grandmother", "grandfather"), ("prince", "princess"),
        ("princess", "prince"), ("nephew", "niece"), ("niece", "nephew"),
    ]
    write_tsv("gendered_words.tsv", gendered, "word -> swapped word")

    contractions = [
        ("are not", "aren't"), ("cannot", "can't"), ("could not", "couldn't"),
        ("did not", "didn't"), ("does not", "doesn't"), ("do not", "don't"),
        ("had not", "hadn't"), ("has not", "hasn't"), ("have not", "haven't"),
        ("he is", "he's"), ("he will", "he'll"), ("i am", "i'm"),
        ("i have", "i've"), ("i will", "i'll"), ("is not", "isn't"),
        ("it is", "it's"), ("it will", "it'll"), ("let us", "let's"),
        ("she is", "she's"), ("she will", "she'll"),
        ("should not", "shouldn't"), ("that is", "that's"),
        ("there is", "there's"), ("they are", "they're"),
        ("they have", "they've"), ("they will", "they'll"),
        ("was not", "wasn't"), ("we are", "we're"), ("we have", "we've"),
        ("we will", "we'll"), ("were not", "weren't"), ("what is", "what's"),
        ("where is", "where's"), ("who is", "who's"), ("will not", "won't"),
        ("would not", "wouldn't"), ("you are", "you're"),
        ("you have", "you've"), ("you will", "you'll"),
    ]
    write_tsv("contractions.tsv", contractions, "phrase -> contraction")

    make_fun_fonts()
    print("text tables written")


def make_fun_fonts():
    # Unicode math alphabets; some codepoints live in Letterlike Symbols and
    # are absent from the MATHEMATICAL blocks, so fall back per character.
    exceptions = {
        ("italic", "h"): "ℎ",        # planck constant
        ("script", "B"): "ℬ", ("script", "E"): "ℰ",
        ("script", "F"): "ℱ", ("script", "H"): "ℋ",
        ("script", "I"): "ℐ", ("script", "L"): "ℒ",
        ("script", "M"): "ℳ", ("script", "R"): "ℛ",
        ("script", "e"): "ℯ", ("script", "g"): "ℊ",
        ("script", "o"): "ℴ",
        ("fraktur", "C"): "ℭ", ("fraktur", "H"): "ℌ",
        ("fraktur", "I"): "ℑ", ("fraktur", "R"): "ℜ",
        ("fraktur", "Z"): "ℨ",
        ("double_struck", "C"): "ℂ", ("double_struck", "H"): "ℍ",
        ("double_struck", "N"): "ℕ", ("double_struck", "P"): "ℙ",
        ("double_struck", "Q"): "ℚ", ("double_struck", "R"): "ℝ",
        ("double_struck", "Z"): "ℤ",
    }
    prefixes = {
        "bold": "MATHEMATICAL BOLD",
        "italic": "MATHEMATICAL ITALIC",
        "script": "MATHEMATICAL SCRIPT",
        "fraktur": "MATHEMATICAL FRAKTUR",
        "double_struck": "MATHEMATICAL DOUBLE-STRUCK",
        "sans_bold": "MATHEMATICAL SANS-SERIF BOLD",
        "monospace": "MATHEMATICAL MONOSPACE",
    }
    fonts = {}
    for style, prefix in prefixes.items():
        table = {}
        for code in range(ord("A"), ord("z") + 1):
            ch = chr(code)
            if not ch.isalpha():
                continue
            if (style, ch) in exceptions:
                table[ch] = exceptions[(style, ch)]
                continue
            case = "CAPITAL" if ch.isupper() else "SMALL"
            name = "%s %s %s" % (prefix, case, ch.upper())
            try:
                table[ch] = unicodedata.lookup(name)
            except KeyError as e:
                raise SystemExit("missing codepoint for %s/%s: %s"
                                 % (style, ch, e))
        fonts[style] = table

    circled = {}
    for code in range(ord("A"), ord("Z") + 1):
        circled[chr(code)] = unicodedata.lookup(
            "CIRCLED LATIN CAPITAL LETTER " + chr(code))
    for code in range(ord("a"), ord("z") + 1):
        circled[chr(code)] = unicodedata.lookup(
            "CIRCLED LATIN SMALL LETTER " + chr(code))
    fonts["circled"] = circled

    for style, table in fonts.items():
        for ch, repl in table.items():
            assert unicodedata.category(repl)[0] in ("L", "S"), (style, ch)

    with open(out_path("text", "fun_fonts.json"), "w", encoding="utf-8") as f:
        json.dump(fonts, f, ensure_ascii=False, indent=1, sort_keys=True)


def main():
    make_font()
    make_emoji()
    make_templates()
    make_stock_images()
    make_audio()
    make_video_background()
    make_text_tables()
    print("assets written to", ASSETS)


if __name__ == "__main__":
    main()
