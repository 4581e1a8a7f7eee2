package tiny;

public class Main {
    public static void main(String[] args) {
        Shape s = new Circle(2);
        System.out.println(s.getName() + " " + s.area());
    }
}
