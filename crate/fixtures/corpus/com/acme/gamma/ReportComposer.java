package com.acme.gamma;

import java.util.ArrayList;
import java.util.List;

/**
 * Builds plain-text reports from titled sections, with a fixed-width
 * underline style and a generated table of contents.
 */
public class ReportComposer {
    private final List<String> titles = new ArrayList<>();
    private final List<String> bodies = new ArrayList<>();

    public void addSection(String title, String body) {
        if (title == null || title.isBlank()) {
            throw new IllegalArgumentException("section title required");
        }
        titles.add(title.trim());
        bodies.add(body == null ? "" : body);
    }

    public String tableOfContents() {
        StringBuilder toc = new StringBuilder("Contents\n");
        for (int i = 0; i < titles.size(); i++) {
            toc.append(i + 1).append(". ").append(titles.get(i)).append('\n');
        }
        return toc.toString();
    }

    public String compose() {
        StringBuilder out = new StringBuilder(tableOfContents());
        out.append('\n');
        for (int i = 0; i < titles.size(); i++) {
            String title = titles.get(i);
            out.append(title).append('\n');
            out.append("-".repeat(title.length())).append('\n');
            out.append(bodies.get(i)).append("\n\n");
        }
        return out.toString();
    }

    public int sectionCount() {
        return titles.size();
    }
}
