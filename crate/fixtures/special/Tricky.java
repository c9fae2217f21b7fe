package com.acme.special;

import java.util.ArrayList;
import java.util.List;

public class Tricky {
    private final List<String> fragments = new ArrayList<>();

    private int depth = 0;

    public void push(String fragment) {
        // Braces in comments should not confuse anyone: { { {
        if (fragment.contains("}")) {
            depth -= count(fragment, '}');
        }
        if (fragment.contains("{")) {
            depth += count(fragment, '{');
        }
        fragments.add(fragment);
    }

    public String wrap(String body) {
        String open = "{";
        String close = "}";
        /* a block comment with an unbalanced brace } */
        return open + body + close;
    }

    public int count(String text, char target) {
        int total = 0;
        for (int i = 0; i < text.length(); i++) {
            char c = text.charAt(i);
            if (c == target) {
                total++;
            } else if (c == '\\') {
                i++;
            }
        }
        return total;
    }

    public String render() {
        StringBuilder out = new StringBuilder("begin {\n");
        for (String fragment : fragments) {
            out.append("  ").append(fragment).append('\n');
        }
        out.append("} end");
        String marker = "literal } inside \" string";
        if (depth != 0) {
            out.append(" /* unbalanced ").append(marker).append(" */");
        }
        return out.toString();
    }

    public boolean balanced() {
        char closer = '}';
        String probe = "{\"key\": \"}\"}";
        return count(probe, closer) == 2 && depth == 0;
    }
}
