#!/usr/bin/env python3
"""Regenerate the checked-in posts-dump fixtures under tests/fixtures/.

The fixtures are static test data; rerun this only when deliberately
changing them, and re-derive the hand-counted expectations in the tests.
"""

from pathlib import Path
from xml.sax.saxutils import quoteattr

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

JAVA = "<java>"


def row(**attrs) -> str:
    parts = " ".join(f"{k}={quoteattr(str(v))}" for k, v in attrs.items())
    return f"  <row {parts} />"


def dump(rows) -> str:
    return "\n".join(['<?xml version="1.0" encoding="utf-8"?>', "<posts>", *rows, "</posts>", ""])


def pre(code: str) -> str:
    return f"<pre><code>{code.replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')}</code></pre>"


def q(qid, title, score=1, accepted=None, tags=JAVA, body="<p>q</p>"):
    attrs = dict(Id=qid, PostTypeId=1, Score=score, Title=title, Tags=tags, Body=body)
    if accepted is not None:
        attrs["AcceptedAnswerId"] = accepted
    return row(**attrs)


def a(aid, parent, score, body):
    return row(Id=aid, PostTypeId=2, ParentId=parent, Score=score, Body=body)


def make_small():
    rows = [
        q(101, "How to add lines of text to a text file", score=5),
        a(201, 101, 7, "<p>Use a writer:</p>" + pre("Files.write(path, lines, StandardOpenOption.APPEND);")),
        a(202, 101, 3, "<p>Two ways:</p>" + pre(
            'try (FileWriter w = new FileWriter(file, true)) {\n    w.write(line);\n}'
        ) + "<p>or</p>" + pre("Files.newBufferedWriter(path);")),
        q(102, "Sort a list of strings", score=2, accepted=204),
        a(203, 102, 4, pre("Collections.sort(list);")),
        a(204, 102, 4, pre("list.sort(String::compareTo);")),
        q(103, "Close a database connection", score=1),
        a(205, 103, 0, "<p>Call <code>close()</code> in a finally block.</p>"),
    ]
    (FIXTURES / "posts_small.xml").write_text(dump(rows), encoding="utf-8")


def make_messy():
    rows = [
        q(501, "Parse a date string", score=3),
        a(601, 501, 2, pre('LocalDate.parse("2017-01-01");')),
        a(602, 999, 5, pre("orphan();")),  # parent never stored
        '  <row Id="503" PostTypeId="1" Title="Broken" Body=>',  # malformed
        q(504, "Sort a python list", score=1, tags="<python>"),
        a(604, 504, 1, pre("sorted(xs)")),  # parent filtered out by tag
        q(501, "Parse a date string", score=3),  # duplicate id
        row(Id=505, PostTypeId=4, Body="<p>tag wiki</p>"),
        q(506, "   ", score=0),  # blank title
    ]
    (FIXTURES / "posts_messy.xml").write_text(dump(rows), encoding="utf-8")


BUBBLE_SORT = """public static void bubbleSort(int[] arr) {
    boolean swapped = true;
    int last = arr.length - 1;
    while (swapped) {
        swapped = false;
        for (int i = 0; i < last; i++) {
            if (arr[i] > arr[i + 1]) {
                int tmp = arr[i];
                arr[i] = arr[i + 1];
                arr[i + 1] = tmp;
                swapped = true;
            }
        }
        last--;
    }
}"""

JPANEL = """JFrame frame = new JFrame("Demo");
frame.setDefaultCloseOperation(JFrame.EXIT_ON_CLOSE);
CustomPanel panel = new CustomPanel();
panel.setPreferredSize(new Dimension(400, 300));
frame.getContentPane().add(panel);
frame.pack();
frame.setLocationRelativeTo(null);
frame.setVisible(true);"""


def make_twenty():
    rows = [
        # 1: the add-lines thread; best answer score 7 with exactly one block
        q(26575009, "Best strategy to add lines of text to a text file", score=12, accepted=26575407),
        a(26575407, 26575009, 7, "<p>Append with a writer:</p>" + pre(
            'try (PrintWriter out = new PrintWriter(new FileWriter("log.txt", true))) {\n'
            "    out.println(line);\n}"
        )),
        a(26575601, 26575009, 5, pre(
            "Files.write(path, lines, StandardCharsets.UTF_8,\n    StandardOpenOption.APPEND);"
        ) + "<p>or buffered:</p>" + pre(
            "BufferedWriter w = Files.newBufferedWriter(path);"
        )),
        a(26575999, 26575009, -1, pre("// do not use RandomAccessFile for this")),
        # 2: inputstream -> string, top answer is the IOUtils one
        q(309424, "Read/convert an InputStream to a String", score=30, accepted=350723),
        a(350723, 309424, 25, "<p>With Apache Commons IO:</p>" + pre(
            'String myString = IOUtils.toString(myInputStream, "UTF-8");'
        )),
        a(309433, 309424, 10, pre(
            "BufferedReader reader = new BufferedReader(new InputStreamReader(is));\n"
            "StringBuilder sb = new StringBuilder();\n"
            "String line;\n"
            "while ((line = reader.readLine()) != null) {\n"
            "    sb.append(line).append('\\n');\n}"
        )),
        # 3: bubble sort
        q(16088971, "Bubble sort implementation in Java", score=4),
        a(16089042, 16088971, 6, pre(BUBBLE_SORT)),
        a(16089100, 16088971, 2, pre("Arrays.sort(arr); // if you just need it sorted")),
        # 4: custom jpanel
        q(22621400, "How to add a custom JPanel to a JFrame", score=3, accepted=22621494),
        a(22621494, 22621400, 5, pre(JPANEL)),
        a(22621500, 22621400, 1, pre("frame.add(new CustomPanel());")),
        # 5-7: split-string family
        q(7899525, "How do I split a string by whitespaces", score=8),
        a(7899607, 7899525, 4, pre('String[] parts = input.split("\\\\s+");')),
        a(7899801, 7899525, 2, pre("StringTokenizer st = new StringTokenizer(input);")),
        q(3481828, "Split string by comma in Java", score=6),
        a(3481842, 3481828, 9, pre('String[] fields = line.split(",");')),
        a(3481901, 3481828, 3, pre('Arrays.stream(line.split(","))\n    .map(String::trim)\n    .toArray(String[]::new);')),
        q(14833008, "Split a string by dot", score=2),
        a(14833115, 14833008, 5, pre('String[] parts = version.split("\\\\.");')),
        # 8-11: four json threads, four blocks each (retrieval cap fixture)
        q(2591098, "Parse JSON string in Java", score=9),
        a(2591300, 2591098, 11, pre("JSONObject obj = new JSONObject(payload);") + pre('String name = obj.getString("name");')),
        a(2591455, 2591098, 4, pre("JsonNode root = mapper.readTree(payload);") + pre('root.get("name").asText();')),
        q(4105795, "Parse JSON array from a file", score=7),
        a(4105900, 4105795, 8, pre('JSONArray arr = new JSONArray(Files.readString(path));') + pre("arr.getJSONObject(0);")),
        a(4106001, 4105795, 3, pre("List<Item> items = mapper.readValue(file,\n    new TypeReference<List<Item>>() {});") + pre("items.get(0).getName();")),
        q(28418662, "Parse JSON object with Gson", score=5),
        a(28418800, 28418662, 7, pre("Gson gson = new Gson();") + pre("Item item = gson.fromJson(payload, Item.class);")),
        a(28418901, 28418662, 2, pre("JsonObject obj = JsonParser.parseString(payload).getAsJsonObject();") + pre('obj.get("name").getAsString();')),
        q(7467568, "Parse JSON response from URL", score=4),
        a(7467700, 7467568, 6, pre("String body = new String(url.openStream().readAllBytes());") + pre("new JSONObject(body);")),
        a(7467801, 7467568, 1, pre("HttpResponse<String> resp = client.send(req, BodyHandlers.ofString());") + pre("mapper.readTree(resp.body());")),
        # 12: equal scores, accepted has the higher id (tie-break fixture)
        q(363681, "Generate random integers in a range", score=20, accepted=363851),
        a(363692, 363681, 15, pre("int n = rand.nextInt(max - min + 1) + min;")),
        a(363851, 363681, 15, pre("int n = ThreadLocalRandom.current().nextInt(min, max + 1);")),
        # 13-17, 20: singles
        q(9383109, "Implement Dijkstra algorithm in Java", score=3),
        a(9383200, 9383109, 5, pre("PriorityQueue<Node> queue = new PriorityQueue<>();\n// relax edges until the queue is empty")),
        q(11063102, "Convert uppercase letters to lowercase", score=2),
        a(11063210, 11063102, 3, pre("String lower = input.toLowerCase(Locale.ROOT);")),
        a(11063300, 11063102, 0, pre("char c = Character.toLowerCase(ch);")),
        q(2808535, "Round a double value to two decimal places", score=10),
        a(2808648, 2808535, 13, pre("double rounded = Math.round(value * 100.0) / 100.0;")),
        a(2808719, 2808535, 4, pre('new BigDecimal(value).setScale(2, RoundingMode.HALF_UP);')),
        q(1555262, "Calculate difference between two date instances", score=6),
        a(1555351, 1555262, 10, pre("long days = ChronoUnit.DAYS.between(start, end);")),
        q(240546, "Remove HTML tags from a string", score=5),
        a(240626, 240546, 7, pre('String text = html.replaceAll("<[^>]*>", "");')),
        a(240700, 240546, 2, pre("String text = Jsoup.parse(html).text();")),
        # 18: answers but no code blocks
        q(5133048, "Explain classpath resolution rules", score=2),
        a(5133211, 5133048, 2, "<p>The classpath is searched in order; use <code>-cp</code> to set it.</p>"),
        # 19: zero answers
        q(6045384, "Play a sound in Java", score=1),
        # 20
        q(1757065, "Initialize a two dimensional vector", score=2),
        a(1757171, 1757065, 3, pre("int[][] grid = new int[rows][cols];")),
    ]
    (FIXTURES / "posts_20.xml").write_text(dump(rows), encoding="utf-8")


REPLAY_QUERIES = [
    "parse json",
    "sort list",
    "split string",
    "add lines to text file",
    "convert inputstream to string",
    "generate random integers",
    "remove html tags",
    "round double value",
    "implement dijkstra algorithm",
    "initialize two dimensional vector",
]

ORIGINS = ["content-assist", "selection", "question-marks"]


def make_session_script(n=101):
    """Deterministic invocation script: query, origin, cycles, helpful."""
    rows = ["query\torigin\tcycles\thelpful"]
    for i in range(n):
        rows.append("\t".join([
            REPLAY_QUERIES[i % len(REPLAY_QUERIES)],
            ORIGINS[i % len(ORIGINS)],
            str(i % 11),
            "true" if i % 3 else "false",
        ]))
    (FIXTURES / "session_script.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_small()
    make_messy()
    make_twenty()
    make_session_script()
    print("fixtures written to", FIXTURES)
