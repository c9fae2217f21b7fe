package com.acme.util;

import java.util.ArrayDeque;
import java.util.Deque;

/**
 * Normalizes slash-separated logical paths: collapses duplicate slashes,
 * resolves "." and "..", and never escapes the root.
 */
public final class PathNormalizer {
    private PathNormalizer() {
    }

    public static String normalize(String path) {
        if (path == null || path.isEmpty()) {
            return "/";
        }
        Deque<String> segments = new ArrayDeque<>();
        for (String part : path.split("/")) {
            if (part.isEmpty() || part.equals(".")) {
                continue;
            }
            if (part.equals("..")) {
                segments.pollLast();
            } else {
                segments.addLast(part);
            }
        }
        StringBuilder out = new StringBuilder();
        for (String segment : segments) {
            out.append('/').append(segment);
        }
        return out.length() == 0 ? "/" : out.toString();
    }

    public static boolean isNormalized(String path) {
        return path.equals(normalize(path));
    }

    public static String join(String base, String relative) {
        return normalize(base + "/" + relative);
    }
}
