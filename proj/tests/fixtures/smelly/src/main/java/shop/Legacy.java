package shop;

/** Nothing references this class any more. */
public class Legacy {
  private int counter = 100;

  public int bump() {
    return counter += 2;
  }
}
